#pragma once

// Min-max objectives, the polynomial single-instance solver, and exhaustive
// multi-instance oracles used as ground truth on small instances.

#include <cstdint>
#include <span>
#include <vector>

#include "mmo/instances.hpp"

namespace mmo {

/// Sorted, duplicate-free element indices (vertices, edges, arcs or items).
using Subset = std::vector<std::uint32_t>;

/// max_{i in s} w_i, with the empty maximum defined as 0.
double minmax_value(const Subset& s, std::span<const double> w);

bool is_vertex_cover(const Graph& g, const Subset& s);

struct VcSolution {
  Subset cover;
  double cost = 0.0;
};

/// Exact single-row min-max vertex cover by thresholding: the smallest
/// distinct weight w* for which {i : w_i <= w*} is a cover.
VcSolution static_minmax_vc(const Graph& g, std::span<const double> w);

/// Sum over rows of the row maximum within the selection.
double multi_minmax_cost(const Subset& selection, const WeightSequence& rows);

inline constexpr std::uint32_t kMaxHindsightVertices = 25;
inline constexpr std::uint32_t kMaxMatchingVertices = 16;
inline constexpr std::uint32_t kMaxPathStages = 20;
inline constexpr std::uint32_t kMaxP3Jobs = 12;

/// Every inclusion-minimal vertex cover (complements of the maximal
/// independent sets), ordered by the independent set's bitmask. Needs n <= 25.
std::vector<Subset> minimal_vertex_covers(const Graph& g);

/// Best static cover for the whole sequence. The objective is monotone under
/// inclusion, so the search runs over minimal covers only. Ties prefer fewer
/// vertices, then the lexicographically smallest set.
VcSolution best_static_vc_hindsight(const Graph& g, const WeightSequence& seq);

struct MatchingSolution {
  Subset edges;  // indices into g.edges()
  double cost = 0.0;
};

/// rows are per-edge weights (width == g.edge_count()). Throws OddVertexCount
/// or NoPerfectMatching; needs |V| <= 16.
MatchingSolution brute_force_multi_matching(const Graph& g, const WeightSequence& rows);

/// v_0 - v_n chain with two parallel arcs per stage. Arc 2i is the "true"
/// arc of stage i, arc 2i+1 the "false" arc.
struct ArcChain {
  std::uint32_t stages = 0;

  std::uint32_t arc_count() const noexcept { return 2 * stages; }
  static constexpr std::uint32_t true_arc(std::uint32_t stage) { return 2 * stage; }
  static constexpr std::uint32_t false_arc(std::uint32_t stage) { return 2 * stage + 1; }
  /// Arcs taken by the path that picks the true arc at stage i iff choice[i].
  Subset path_arcs(const std::vector<bool>& choice) const;
};

struct PathSolution {
  std::vector<bool> choice;  // true = took the "true" arc at that stage
  double cost = 0.0;
};

PathSolution brute_force_multi_path(const ArcChain& chain, const WeightSequence& rows);

struct ScheduleSolution {
  std::vector<std::uint8_t> machine;  // in {0,1,2}
  double total_makespan = 0.0;
};

/// Sum over rows of the three-machine makespan.
double multi_makespan(const std::vector<std::uint8_t>& machine, const ProcTimeMatrix& jobs);

/// Exhaustive P3||Cmax multi-instance oracle; needs n <= 12.
ScheduleSolution brute_force_multi_p3cmax(const ProcTimeMatrix& jobs);

} // namespace mmo
