#pragma once

// Gap decision through an online learner, and the multi-instance hardness
// reductions as instance generators with exhaustive correspondence checks.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mmo/instances.hpp"
#include "mmo/minmax.hpp"
#include "mmo/ogd.hpp"
#include "mmo/rng.hpp"

namespace mmo {

struct GapConfig {
  double A = 0.0;
  double B = 1.0;
  double p_coeff = 1.0;  // regret polynomial p(n) = p_coeff * n
  double c_exp = 0.5;    // regret exponent, p(n) T^c
  std::optional<std::size_t> T_override;

  void validate() const;
};

/// ceil( (A eps / (2 p(n) B))^{1/(c-1)} ). Throws InvalidArgument when c == 1.
std::size_t gap_horizon(const GapConfig& cfg, double eps, std::size_t n);

/// Online min-max vertex cover learner driven by gap_solver.
class VcLearner {
public:
  virtual ~VcLearner() = default;
  virtual Subset play() = 0;
  virtual void feedback(std::span<const double> w, double cost) = 0;
};

/// Plays the best static cover for the weights observed so far.
class FollowTheLeaderVc final : public VcLearner {
public:
  explicit FollowTheLeaderVc(Graph g);
  Subset play() override;
  void feedback(std::span<const double> w, double cost) override;

private:
  Graph graph_;
  WeightSequence history_;
};

class OgdVcAdapter final : public VcLearner {
public:
  OgdVcAdapter(Graph g, OgdConfig cfg) : learner_(std::move(g), cfg) {}
  Subset play() override { return learner_.play(); }
  void feedback(std::span<const double> w, double) override { learner_.observe(w); }

private:
  OgdVcLearner learner_;
};

enum class GapAnswer { No, Yes };

struct GapOutcome {
  GapAnswer answer = GapAnswer::No;
  std::size_t rounds = 0;           // rounds executed (Yes is returned mid-round)
  std::size_t horizon = 0;
  WeightSequence weights;           // one-hot rows fed back, in order
  std::vector<std::size_t> played_sizes;
  std::vector<double> costs;        // cost fed back each completed round
};

/// Horizon is min(gap_horizon(cfg, eps, n), T_override). Returns Yes at the
/// first play with fewer than B n vertices; otherwise feeds a uniformly random
/// one-hot row and its cost. Throws NonCover if the learner plays a non-cover.
GapOutcome gap_solver(const Graph& g, const GapConfig& cfg, double eps, VcLearner& learner,
                      SeededRng& rng);

// ---------------------------------------------------------------- reductions

/// Per variable i: vertices u_i = 4i, u_i^t = 4i+1, ubar_i = 4i+2, u_i^f = 4i+3
/// and the 4-cycle edges (in this order) u-u^t, u^t-ubar, ubar-u^f, u^f-u.
struct MatchingGadget {
  Graph graph;
  WeightSequence weight_rows;  // one per clause, width = edge count

  static constexpr std::uint32_t u(std::uint32_t i) { return 4 * i; }
  static constexpr std::uint32_t u_true(std::uint32_t i) { return 4 * i + 1; }
  static constexpr std::uint32_t u_bar(std::uint32_t i) { return 4 * i + 2; }
  static constexpr std::uint32_t u_false(std::uint32_t i) { return 4 * i + 3; }
  static constexpr std::uint32_t edge_u_true(std::uint32_t i) { return 4 * i; }
  static constexpr std::uint32_t edge_true_bar(std::uint32_t i) { return 4 * i + 1; }
  static constexpr std::uint32_t edge_bar_false(std::uint32_t i) { return 4 * i + 2; }
  static constexpr std::uint32_t edge_false_u(std::uint32_t i) { return 4 * i + 3; }

  /// Perfect matching M_sigma as sorted edge indices.
  Subset matching_for(const std::vector<bool>& assignment) const;
  /// Inverse of matching_for; throws InvalidArgument for non-gadget matchings.
  std::vector<bool> assignment_for(const Subset& matching) const;
};

/// w^j(u_i u_i^t) = 1 iff not-x_i in C_j, w^j(u_i u_i^f) = 1 iff x_i in C_j,
/// every edge at ubar_i weighs 0.
MatchingGadget dnf_to_matching(const Dnf3Formula& f);

struct PathGadget {
  ArcChain chain;
  WeightSequence weight_rows;  // one per clause, width = 2 * stages
};

/// If x_i in C_j then w^j(e^f_i) = 1; if not-x_i in C_j then w^j(e^t_i) = 1.
PathGadget dnf_to_path(const Dnf3Formula& f);

/// n one-hot rows, row i marks vertex i.
WeightSequence vc_to_multi_vc(const Graph& g);

/// One row per edge (i,j) with processing time 1 for jobs i and j.
ProcTimeMatrix threecolor_to_p3(const Graph& g);

/// Exhaustive 3-coloring search; needs n <= 20.
std::optional<std::vector<std::uint8_t>> brute_force_3coloring(const Graph& g);

struct CorrespondenceViolation {
  std::string gadget;  // "matching" or "path"
  std::vector<bool> assignment;
  std::size_t satisfied = 0;
  double gadget_cost = 0.0;
};

struct CorrespondenceReport {
  std::string formula_id;
  std::size_t assignments_checked = 0;
  std::vector<CorrespondenceViolation> violations;
};

inline constexpr std::uint32_t kMaxCorrespondenceVars = 12;

/// For every assignment, checks satisfied = m - cost on both gadgets.
CorrespondenceReport validate_correspondence(const Dnf3Formula& f, std::string formula_id = "");

std::string to_json(const CorrespondenceReport& report);

} // namespace mmo
