#include "mmo/reductions.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "mmo/error.hpp"

namespace mmo {

void GapConfig::validate() const {
  require(0.0 <= A && A < B && B <= 1.0, ErrorCode::InvalidArgument, "need 0 <= A < B <= 1");
  require(0.0 <= c_exp && c_exp < 1.0, ErrorCode::InvalidArgument, "need 0 <= c < 1");
  require(p_coeff > 0.0, ErrorCode::InvalidArgument, "p(n) coefficient must be positive");
}

std::size_t gap_horizon(const GapConfig& cfg, double eps, std::size_t n) {
  require(cfg.c_exp != 1.0, ErrorCode::InvalidArgument, "regret exponent c = 1 is degenerate");
  cfg.validate();
  require(eps > 0.0, ErrorCode::InvalidArgument, "gap slack eps must be positive");
  require(n >= 1, ErrorCode::InvalidArgument, "instance size must be positive");
  const double p_n = cfg.p_coeff * static_cast<double>(n);
  const double base = cfg.A * eps / (2.0 * p_n * cfg.B);
  const double T = std::pow(base, 1.0 / (cfg.c_exp - 1.0));
  constexpr auto cap = std::numeric_limits<std::size_t>::max();
  if (!std::isfinite(T) || T >= 1.8e19) return cap;
  // Absorb pow() rounding noise before taking the ceiling.
  return static_cast<std::size_t>(std::ceil(T * (1.0 - 1e-12)));
}

FollowTheLeaderVc::FollowTheLeaderVc(Graph g)
    : graph_(std::move(g)), history_(graph_.vertex_count()) {
  require(graph_.vertex_count() <= kMaxHindsightVertices, ErrorCode::TooLarge,
          "follow-the-leader learner enumerates covers; needs n <= 25");
}

Subset FollowTheLeaderVc::play() { return best_static_vc_hindsight(graph_, history_).cover; }

void FollowTheLeaderVc::feedback(std::span<const double> w, double) {
  history_.push_back(std::vector<double>(w.begin(), w.end()));
}

GapOutcome gap_solver(const Graph& g, const GapConfig& cfg, double eps, VcLearner& learner,
                      SeededRng& rng) {
  const std::uint32_t n = g.vertex_count();
  require(n >= 1, ErrorCode::InvalidArgument, "gap solver needs a nonempty graph");
  GapOutcome out;
  out.weights = WeightSequence(n);
  out.horizon = gap_horizon(cfg, eps, n);
  if (cfg.T_override) out.horizon = std::min(out.horizon, *cfg.T_override);

  const double size_limit = cfg.B * static_cast<double>(n);
  for (std::size_t t = 1; t <= out.horizon; ++t) {
    const Subset x = learner.play();
    if (!is_vertex_cover(g, x))
      fail(ErrorCode::NonCover, "round " + std::to_string(t) + ": learner played a non-cover");
    out.played_sizes.push_back(x.size());
    out.rounds = t;
    if (static_cast<double>(x.size()) < size_limit) {
      out.answer = GapAnswer::Yes;
      return out;
    }
    std::vector<double> w(n, 0.0);
    w[rng.below(n)] = 1.0;
    const double cost = minmax_value(x, w);
    learner.feedback(w, cost);
    out.costs.push_back(cost);
    out.weights.push_back(std::move(w));
  }
  out.answer = GapAnswer::No;
  return out;
}

// ---------------------------------------------------------------- matching

MatchingGadget dnf_to_matching(const Dnf3Formula& f) {
  const std::uint32_t n = f.variable_count();
  std::vector<Edge> edges;
  edges.reserve(4 * n);
  for (std::uint32_t i = 0; i < n; ++i) {
    using G = MatchingGadget;
    edges.emplace_back(G::u(i), G::u_true(i));
    edges.emplace_back(G::u_true(i), G::u_bar(i));
    edges.emplace_back(G::u_bar(i), G::u_false(i));
    edges.emplace_back(G::u_false(i), G::u(i));
  }
  MatchingGadget gadget;
  gadget.graph = Graph(4 * n, std::move(edges));
  gadget.weight_rows = WeightSequence(4 * n);
  for (const auto& clause : f.clauses()) {
    std::vector<double> row(4 * n, 0.0);
    for (const auto& lit : clause) {
      // The edge taken by the assignment that falsifies the literal.
      row[lit.negated ? MatchingGadget::edge_u_true(lit.var)
                      : MatchingGadget::edge_false_u(lit.var)] = 1.0;
    }
    gadget.weight_rows.push_back(std::move(row));
  }
  return gadget;
}

Subset MatchingGadget::matching_for(const std::vector<bool>& assignment) const {
  const std::uint32_t n = graph.vertex_count() / 4;
  require(assignment.size() == n, ErrorCode::DimensionMismatch, "assignment size mismatch");
  Subset m;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (assignment[i]) {
      m.push_back(edge_u_true(i));
      m.push_back(edge_bar_false(i));
    } else {
      m.push_back(edge_true_bar(i));
      m.push_back(edge_false_u(i));
    }
  }
  return m;
}

std::vector<bool> MatchingGadget::assignment_for(const Subset& matching) const {
  const std::uint32_t n = graph.vertex_count() / 4;
  require(matching.size() == 2 * n, ErrorCode::InvalidArgument, "not a perfect matching");
  std::vector<bool> sigma(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t a = matching[2 * i], b = matching[2 * i + 1];
    if (a == edge_u_true(i) && b == edge_bar_false(i))
      sigma[i] = true;
    else if (a == edge_true_bar(i) && b == edge_false_u(i))
      sigma[i] = false;
    else
      fail(ErrorCode::InvalidArgument, "matching is not a gadget matching");
  }
  return sigma;
}

// ---------------------------------------------------------------- path

PathGadget dnf_to_path(const Dnf3Formula& f) {
  PathGadget gadget;
  gadget.chain.stages = f.variable_count();
  gadget.weight_rows = WeightSequence(gadget.chain.arc_count());
  for (const auto& clause : f.clauses()) {
    std::vector<double> row(gadget.chain.arc_count(), 0.0);
    for (const auto& lit : clause)
      row[lit.negated ? ArcChain::true_arc(lit.var) : ArcChain::false_arc(lit.var)] = 1.0;
    gadget.weight_rows.push_back(std::move(row));
  }
  return gadget;
}

// ---------------------------------------------------------------- VC, P3

WeightSequence vc_to_multi_vc(const Graph& g) {
  const std::uint32_t n = g.vertex_count();
  WeightSequence rows(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::vector<double> row(n, 0.0);
    row[i] = 1.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

ProcTimeMatrix threecolor_to_p3(const Graph& g) {
  ProcTimeMatrix jobs(g.vertex_count());
  for (auto [i, j] : g.edges()) {
    std::vector<double> row(g.vertex_count(), 0.0);
    row[i] = 1.0;
    row[j] = 1.0;
    jobs.push_back(std::move(row));
  }
  return jobs;
}

std::optional<std::vector<std::uint8_t>> brute_force_3coloring(const Graph& g) {
  const std::uint32_t n = g.vertex_count();
  require(n <= 20, ErrorCode::TooLarge, "3-coloring search needs n <= 20");
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (auto [u, v] : g.edges()) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> color(n, -1);
  auto assign = [&](auto&& self, std::uint32_t v) -> bool {
    if (v == n) return true;
    for (int c = 0; c < 3; ++c) {
      bool ok = true;
      for (auto u : adj[v])
        if (color[u] == c) ok = false;
      if (!ok) continue;
      color[v] = c;
      if (self(self, v + 1)) return true;
    }
    color[v] = -1;
    return false;
  };
  if (!assign(assign, 0)) return std::nullopt;
  return std::vector<std::uint8_t>(color.begin(), color.end());
}

// ---------------------------------------------------------------- validator

CorrespondenceReport validate_correspondence(const Dnf3Formula& f, std::string formula_id) {
  const std::uint32_t n = f.variable_count();
  require(n <= kMaxCorrespondenceVars, ErrorCode::TooLarge,
          "exhaustive correspondence check needs n <= " +
              std::to_string(kMaxCorrespondenceVars));
  const auto matching = dnf_to_matching(f);
  const auto path = dnf_to_path(f);
  const double m = static_cast<double>(f.clause_count());

  CorrespondenceReport report;
  report.formula_id = std::move(formula_id);
  std::vector<bool> sigma(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::uint32_t i = 0; i < n; ++i) sigma[i] = (mask >> i) & 1;
    const std::size_t sat = f.satisfied_count(sigma);
    const double cost_m = multi_minmax_cost(matching.matching_for(sigma), matching.weight_rows);
    const double cost_p = multi_minmax_cost(path.chain.path_arcs(sigma), path.weight_rows);
    if (static_cast<double>(sat) != m - cost_m)
      report.violations.push_back({"matching", sigma, sat, cost_m});
    if (static_cast<double>(sat) != m - cost_p)
      report.violations.push_back({"path", sigma, sat, cost_p});
    ++report.assignments_checked;
  }
  return report;
}

std::string to_json(const CorrespondenceReport& report) {
  nlohmann::json j;
  j["formula_id"] = report.formula_id;
  j["assignments_checked"] = report.assignments_checked;
  j["violations"] = nlohmann::json::array();
  for (const auto& v : report.violations) {
    std::string sigma;
    for (bool b : v.assignment) sigma += b ? 'T' : 'F';
    j["violations"].push_back({{"gadget", v.gadget},
                               {"assignment", sigma},
                               {"satisfied", v.satisfied},
                               {"gadget_cost", v.gadget_cost}});
  }
  return j.dump();
}

} // namespace mmo
