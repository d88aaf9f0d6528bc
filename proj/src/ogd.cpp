#include "mmo/ogd.hpp"

#include <algorithm>
#include <cmath>

#include "mmo/error.hpp"

namespace mmo {

void OgdConfig::validate() const {
  require(std::isfinite(W_bound) && W_bound > 0.0, ErrorCode::InvalidArgument,
          "W_bound must be positive");
  require(feas_tol > 0.0 && conv_tol > 0.0, ErrorCode::InvalidArgument,
          "tolerances must be positive");
  require(max_cycles > 0, ErrorCode::InvalidArgument, "max_cycles must be positive");
}

double vc_polytope_violation(const Graph& g, std::span<const double> x) {
  require(x.size() == g.vertex_count(), ErrorCode::DimensionMismatch, "point dimension mismatch");
  double worst = 0.0;
  for (double v : x) worst = std::max({worst, -v, v - 1.0});
  for (auto [u, v] : g.edges()) worst = std::max(worst, 1.0 - x[u] - x[v]);
  return worst;
}

bool in_vc_polytope(const Graph& g, std::span<const double> x, double tol) {
  return vc_polytope_violation(g, x) <= tol;
}

std::vector<double> subgradient(std::span<const double> w, std::span<const double> x) {
  require(w.size() == x.size(), ErrorCode::DimensionMismatch, "subgradient dimension mismatch");
  std::vector<double> g(w.size(), 0.0);
  if (w.empty()) return g;
  std::size_t best = 0;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] * x[i] > w[best] * x[best]) best = i;
  g[best] = w[best];
  return g;
}

FractionalPoint project_vc_polytope(std::span<const double> y, const Graph& g,
                                    const OgdConfig& cfg, ProjectionStats* stats) {
  const std::size_t n = g.vertex_count();
  require(y.size() == n, ErrorCode::DimensionMismatch, "projection input dimension mismatch");
  for (double v : y) require(std::isfinite(v), ErrorCode::InvalidArgument, "non-finite input");

  const auto& edges = g.edges();
  std::vector<double> x(y.begin(), y.end());
  // Dykstra corrections. Each half-space correction is a nonnegative
  // multiple of its normal (1,1), so one scalar per edge suffices.
  std::vector<double> edge_shift(edges.size(), 0.0);
  std::vector<double> box_corr(n, 0.0);
  std::vector<double> prev(n);

  ProjectionStats st;
  for (st.cycles = 1; st.cycles <= cfg.max_cycles; ++st.cycles) {
    prev = x;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const auto [u, v] = edges[k];
      const double zu = x[u] - edge_shift[k];
      const double zv = x[v] - edge_shift[k];
      const double shift = std::max(0.0, (1.0 - zu - zv) / 2.0);
      x[u] = zu + shift;
      x[v] = zv + shift;
      edge_shift[k] = shift;
    }
    // Box last, so the returned point lies in [0,1]^n exactly.
    for (std::size_t i = 0; i < n; ++i) {
      const double z = x[i] + box_corr[i];
      x[i] = std::clamp(z, 0.0, 1.0);
      box_corr[i] = z - x[i];
    }

    st.last_change = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      st.last_change = std::max(st.last_change, std::abs(x[i] - prev[i]));
    if (st.last_change <= cfg.conv_tol) {
      st.violation = vc_polytope_violation(g, x);
      if (st.violation <= cfg.feas_tol) {
        if (stats) *stats = st;
        return {std::move(x)};
      }
    }
  }
  st.cycles = cfg.max_cycles;
  st.violation = vc_polytope_violation(g, x);
  if (stats) *stats = st;
  fail(ErrorCode::NotConverged,
       "projection did not converge within " + std::to_string(cfg.max_cycles) +
           " cycles (residual: last change " + format_real(st.last_change) +
           ", violation " + format_real(st.violation) + ")");
}

Subset round_half(std::span<const double> x) {
  Subset s;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] >= 0.5) s.push_back(static_cast<std::uint32_t>(i));
  return s;
}

ProjectionCheck check_projection(const Graph& g, std::size_t samples, std::size_t comparators,
                                 SeededRng& rng, const OgdConfig& cfg) {
  const std::uint32_t n = g.vertex_count();
  auto dist = [](std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
  };
  ProjectionCheck out;
  std::vector<double> y(n), z(n);
  for (std::size_t k = 0; k < samples; ++k) {
    for (auto& v : y) v = rng.uniform(-0.5, 1.5);
    const auto p = project_vc_polytope(y, g, cfg);
    const auto pp = project_vc_polytope(p.x, g, cfg);
    out.max_violation = std::max(out.max_violation, vc_polytope_violation(g, p.x));
    for (std::uint32_t i = 0; i < n; ++i)
      out.max_idempotence_gap = std::max(out.max_idempotence_gap, std::abs(pp.x[i] - p.x[i]));
    const double d = dist(y, p.x);
    for (std::size_t c = 0; c < comparators; ++c) {
      // Raising an endpoint never breaks an edge that already holds.
      for (auto& v : z) v = rng.uniform01();
      for (auto [i, j] : g.edges())
        if (z[i] + z[j] < 1.0) z[j] = 1.0 - z[i];
      out.max_optimality_gap = std::max(out.max_optimality_gap, d - dist(y, z));
    }
    ++out.samples;
  }
  out.pass = out.max_violation <= 1e-8 && out.max_idempotence_gap <= 1e-8 &&
             out.max_optimality_gap <= 1e-6;
  return out;
}

double theorem2_bound(double W, std::size_t n, std::size_t T) {
  return 3.0 * W * std::sqrt(static_cast<double>(n) * static_cast<double>(T));
}

OgdVcLearner::OgdVcLearner(Graph g, OgdConfig cfg) : graph_(std::move(g)), cfg_(cfg) {
  cfg_.validate();
  point_.x.assign(graph_.vertex_count(), 0.5);
}

void OgdVcLearner::observe(std::span<const double> w) {
  const std::size_t n = graph_.vertex_count();
  require(w.size() == n, ErrorCode::DimensionMismatch, "weight row dimension mismatch");
  const double root_t = std::sqrt(static_cast<double>(t_));
  const double step = cfg_.step_mode == StepMode::Paper
                          ? 1.0 / root_t
                          : std::sqrt(static_cast<double>(n)) / (cfg_.W_bound * root_t);
  const auto grad = subgradient(w, point_.x);
  std::vector<double> y(point_.x);
  for (std::size_t i = 0; i < n; ++i) y[i] -= step * grad[i];
  point_ = project_vc_polytope(y, graph_, cfg_);
  ++t_;
}

RegretTrace ogd_run(const Graph& g, const WeightSequence& seq, const OgdConfig& cfg) {
  require(seq.width() == g.vertex_count(), ErrorCode::DimensionMismatch,
          "weight sequence width differs from vertex count");
  for (const auto& row : seq.rows())
    for (double v : row)
      require(v <= cfg.W_bound, ErrorCode::InvalidArgument, "weight exceeds W_bound");

  RegretTrace trace;
  trace.algorithm = "ogd_vc";
  trace.sense = Sense::Minimize;
  trace.value_name = "int_cost";
  trace.cumulative_name = "cum_int";
  trace.extra_names = {"frac_cost", "cum_frac", "bound_additive"};
  trace.csv_columns = {"t",      "played_set", "int_cost",      "frac_cost",
                       "cum_int", "cum_frac",  "bound_additive"};

  OgdVcLearner learner(g, cfg);
  double cum_frac = 0.0;
  for (std::size_t t = 0; t < seq.length(); ++t) {
    const auto& w = seq.row(t);
    Subset played = learner.play();
    const double int_cost = minmax_value(played, w);
    double frac_cost = 0.0;
    const auto& x = learner.point().x;
    for (std::size_t i = 0; i < w.size(); ++i) frac_cost = std::max(frac_cost, w[i] * x[i]);
    cum_frac += frac_cost;
    try {
      learner.observe(w);
    } catch (const Error& e) {
      fail(e.code(), "round " + std::to_string(t + 1) + ": " + e.what());
    }
    trace.append(std::move(played), int_cost,
                 {frac_cost, cum_frac, theorem2_bound(cfg.W_bound, g.vertex_count(), t + 1)});
  }
  return trace;
}

} // namespace mmo
