#include "mmo/minmax.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "mmo/error.hpp"

namespace mmo {

namespace {

void check_width(std::size_t got, std::size_t want, const char* what) {
  require(got == want, ErrorCode::DimensionMismatch,
          std::string(what) + ": expected " + std::to_string(want) + " entries, got " +
              std::to_string(got));
}

Subset mask_to_subset(std::uint64_t mask) {
  Subset s;
  while (mask) {
    s.push_back(static_cast<std::uint32_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return s;
}

// Bron-Kerbosch with pivoting on the complement graph: maximal cliques of the
// complement are maximal independent sets of g.
void maximal_independent_sets(std::uint64_t r, std::uint64_t p, std::uint64_t x,
                              const std::vector<std::uint64_t>& non_adj,
                              std::vector<std::uint64_t>& out) {
  if (p == 0 && x == 0) {
    out.push_back(r);
    return;
  }
  const std::uint64_t px = p | x;
  std::uint32_t pivot = static_cast<std::uint32_t>(std::countr_zero(px));
  int best = -1;
  for (std::uint64_t m = px; m; m &= m - 1) {
    const auto u = static_cast<std::uint32_t>(std::countr_zero(m));
    const int c = std::popcount(p & non_adj[u]);
    if (c > best) {
      best = c;
      pivot = u;
    }
  }
  for (std::uint64_t m = p & ~non_adj[pivot]; m; m &= m - 1) {
    const auto v = static_cast<std::uint32_t>(std::countr_zero(m));
    const std::uint64_t bit = std::uint64_t{1} << v;
    maximal_independent_sets(r | bit, p & non_adj[v], x & non_adj[v], non_adj, out);
    p &= ~bit;
    x |= bit;
  }
}

} // namespace

double minmax_value(const Subset& s, std::span<const double> w) {
  double best = 0.0;
  for (auto i : s) {
    require(i < w.size(), ErrorCode::DimensionMismatch,
            "element " + std::to_string(i) + " outside weight row of size " +
                std::to_string(w.size()));
    best = std::max(best, w[i]);
  }
  return best;
}

bool is_vertex_cover(const Graph& g, const Subset& s) {
  std::vector<char> in(g.vertex_count(), 0);
  for (auto v : s) {
    require(v < g.vertex_count(), ErrorCode::InvalidArgument, "vertex out of range");
    in[v] = 1;
  }
  return std::all_of(g.edges().begin(), g.edges().end(),
                     [&](const Edge& e) { return in[e.first] || in[e.second]; });
}

VcSolution static_minmax_vc(const Graph& g, std::span<const double> w) {
  check_width(w.size(), g.vertex_count(), "static_minmax_vc weight row");
  if (g.edge_count() == 0) return {};

  std::vector<double> thresholds(w.begin(), w.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  // Supersets of covers are covers, so feasibility of a threshold is
  // monotone and the smallest feasible one can be found by bisection.
  auto feasible = [&](double threshold) {
    return std::all_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
      return w[e.first] <= threshold || w[e.second] <= threshold;
    });
  };
  std::size_t lo = 0, hi = thresholds.size() - 1;  // the largest weight is always feasible
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(thresholds[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  const double threshold = thresholds[lo];

  VcSolution sol;
  for (std::uint32_t i = 0; i < g.vertex_count(); ++i)
    if (w[i] <= threshold) sol.cover.push_back(i);
  sol.cost = minmax_value(sol.cover, w);
  return sol;
}

double multi_minmax_cost(const Subset& selection, const WeightSequence& rows) {
  double total = 0.0;
  for (const auto& row : rows.rows()) total += minmax_value(selection, row);
  return total;
}

std::vector<Subset> minimal_vertex_covers(const Graph& g) {
  const std::uint32_t n = g.vertex_count();
  require(n <= kMaxHindsightVertices, ErrorCode::TooLarge,
          "cover enumeration needs n <= " + std::to_string(kMaxHindsightVertices));
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> non_adj(n);
  for (std::uint32_t v = 0; v < n; ++v)
    non_adj[v] = all & ~g.neighbour_mask(v) & ~(std::uint64_t{1} << v);

  std::vector<std::uint64_t> independent;
  maximal_independent_sets(0, all, 0, non_adj, independent);
  std::sort(independent.begin(), independent.end());

  std::vector<Subset> covers;
  covers.reserve(independent.size());
  for (auto m : independent) covers.push_back(mask_to_subset(all & ~m));
  return covers;
}

VcSolution best_static_vc_hindsight(const Graph& g, const WeightSequence& seq) {
  check_width(seq.width(), g.vertex_count(), "hindsight weight sequence");
  const auto covers = minimal_vertex_covers(g);

  VcSolution best;
  bool have = false;
  for (const auto& c : covers) {
    const double cost = multi_minmax_cost(c, seq);
    const bool better =
        !have || cost < best.cost ||
        (cost == best.cost &&
         (c.size() < best.cover.size() || (c.size() == best.cover.size() && c < best.cover)));
    if (better) {
      best = {c, cost};
      have = true;
    }
  }
  return best;
}

// ---------------------------------------------------------------- matching

MatchingSolution brute_force_multi_matching(const Graph& g, const WeightSequence& rows) {
  const std::uint32_t n = g.vertex_count();
  require(n <= kMaxMatchingVertices, ErrorCode::TooLarge,
          "matching enumeration needs |V| <= " + std::to_string(kMaxMatchingVertices));
  if (n % 2 != 0) fail(ErrorCode::OddVertexCount, "graph has an odd number of vertices");
  check_width(rows.width(), g.edge_count(), "matching weight rows");

  // incident[v] = (neighbour, edge index)
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> incident(n);
  for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edges()[e];
    incident[u].emplace_back(v, e);
    incident[v].emplace_back(u, e);
  }

  MatchingSolution best;
  bool found = false;
  std::vector<char> matched(n, 0);
  Subset current;

  auto recurse = [&](auto&& self) -> void {
    std::uint32_t v = 0;
    while (v < n && matched[v]) ++v;
    if (v == n) {
      Subset sorted = current;
      std::sort(sorted.begin(), sorted.end());
      const double cost = multi_minmax_cost(sorted, rows);
      if (!found || cost < best.cost || (cost == best.cost && sorted < best.edges)) {
        best = {std::move(sorted), cost};
        found = true;
      }
      return;
    }
    matched[v] = 1;
    for (auto [u, e] : incident[v]) {
      if (matched[u]) continue;
      matched[u] = 1;
      current.push_back(e);
      self(self);
      current.pop_back();
      matched[u] = 0;
    }
    matched[v] = 0;
  };
  recurse(recurse);

  if (!found) fail(ErrorCode::NoPerfectMatching, "graph has no perfect matching");
  return best;
}

// ---------------------------------------------------------------- path

Subset ArcChain::path_arcs(const std::vector<bool>& choice) const {
  require(choice.size() == stages, ErrorCode::DimensionMismatch, "path choice size mismatch");
  Subset arcs;
  for (std::uint32_t i = 0; i < stages; ++i) arcs.push_back(choice[i] ? true_arc(i) : false_arc(i));
  return arcs;
}

PathSolution brute_force_multi_path(const ArcChain& chain, const WeightSequence& rows) {
  require(chain.stages <= kMaxPathStages, ErrorCode::TooLarge,
          "path enumeration needs at most " + std::to_string(kMaxPathStages) + " stages");
  check_width(rows.width(), chain.arc_count(), "path weight rows");

  // Bit i of the mask set means "false arc at stage i"; mask 0 is all-true,
  // so ties resolve toward true choices at early stages.
  PathSolution best;
  bool have = false;
  const std::uint64_t total = std::uint64_t{1} << chain.stages;
  std::vector<bool> choice(chain.stages);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::uint32_t i = 0; i < chain.stages; ++i) choice[i] = !((mask >> i) & 1);
    const double cost = multi_minmax_cost(chain.path_arcs(choice), rows);
    if (!have || cost < best.cost) {
      best = {choice, cost};
      have = true;
    }
  }
  return best;
}

// ---------------------------------------------------------------- P3||Cmax

double multi_makespan(const std::vector<std::uint8_t>& machine, const ProcTimeMatrix& jobs) {
  check_width(machine.size(), jobs.width(), "machine assignment");
  double total = 0.0;
  for (const auto& row : jobs.rows()) {
    double load[3] = {0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < row.size(); ++j) {
      require(machine[j] < 3, ErrorCode::InvalidArgument, "machine index must be 0, 1 or 2");
      load[machine[j]] += row[j];
    }
    total += std::max({load[0], load[1], load[2]});
  }
  return total;
}

ScheduleSolution brute_force_multi_p3cmax(const ProcTimeMatrix& jobs) {
  const std::uint32_t n = jobs.width();
  require(n <= kMaxP3Jobs, ErrorCode::TooLarge,
          "P3||Cmax enumeration needs n <= " + std::to_string(kMaxP3Jobs));

  // Base-3 counter over assignments; job 0 is pinned to machine 0 since the
  // machines are identical.
  ScheduleSolution best;
  best.machine.assign(n, 0);
  best.total_makespan = multi_makespan(best.machine, jobs);
  if (n <= 1) return best;

  std::vector<std::uint8_t> machine(n, 0);
  for (;;) {
    std::uint32_t k = 1;
    while (k < n && machine[k] == 2) machine[k++] = 0;
    if (k == n) break;
    ++machine[k];
    const double cost = multi_makespan(machine, jobs);
    if (cost < best.total_makespan) best = {machine, cost};
  }
  return best;
}

} // namespace mmo
