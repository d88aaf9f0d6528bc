#include "mmo/gftpl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "mmo/error.hpp"

namespace mmo {

void GftplConfig::validate() const {
  auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  require(finite_nonneg(eta), ErrorCode::InvalidArgument, "eta must be >= 0");
  require(kappa >= 1.0, ErrorCode::InvalidArgument, "kappa must be >= 1");
  require(delta > 0.0, ErrorCode::InvalidArgument, "delta must be > 0");
  require(finite_nonneg(G_gamma) && finite_nonneg(G_f) && finite_nonneg(F_M) &&
              finite_nonneg(Gamma_M),
          ErrorCode::InvalidArgument, "diameters and maxima must be >= 0");
  require(marker_profit > 0.0, ErrorCode::InvalidArgument, "marker profit must be > 0");
  require(finite_nonneg(eps), ErrorCode::InvalidArgument, "eps must be >= 0");
}

double default_eta(double kappa, double G_f, double G_gamma, double delta, double eps,
                   std::size_t T) {
  if (G_gamma <= 0.0 || delta <= 0.0) return 0.0;
  return std::sqrt(kappa * G_f * (G_f + 2.0 * eps) * static_cast<double>(T) / (delta * G_gamma));
}

PayoffRange gkp_payoff_range(const GkpStatic& statics, std::span<const GkpRound> rounds) {
  const double total_w = statics.total_weight();
  double hi = 0.0, lo = 0.0;  // the empty set always earns 0
  for (const auto& r : rounds) {
    r.validate(statics.item_count());
    double sum_p = 0.0;
    for (double p : r.p) sum_p += p;
    hi = std::max(hi, sum_p);
    lo = std::min(lo, -statics.c * std::max(0.0, total_w - r.B));
  }
  return {hi, hi - lo};
}

GftplConfig default_gkp_config(const GkpStatic& statics, std::span<const GkpRound> stream,
                               EpsSchedule schedule) {
  GftplConfig cfg;
  const auto range = gkp_payoff_range(statics, stream);
  cfg.N = statics.item_count();
  cfg.marker_profit = 1.0;
  cfg.kappa = 2.0;
  cfg.delta = cfg.marker_profit;
  cfg.G_gamma = cfg.marker_profit;
  cfg.Gamma_M = cfg.marker_profit;
  cfg.F_M = range.F_M;
  cfg.G_f = range.G_f;
  cfg.schedule = schedule;
  const std::size_t T = stream.size();
  cfg.eps = T == 0 ? 0.0 : 1.0 / std::sqrt(static_cast<double>(T));
  cfg.eta = default_eta(cfg.kappa, cfg.G_f, cfg.G_gamma, cfg.delta, cfg.eps, T);
  return cfg;
}

std::vector<double> draw_perturbation(const GftplConfig& cfg, SeededRng& rng) {
  cfg.validate();
  std::vector<double> a(cfg.N);
  for (auto& v : a) v = cfg.eta * rng.uniform01();
  return a;
}

double epsilon_prime(double eps, std::size_t T, const GftplConfig& cfg) {
  const double denom =
      static_cast<double>(T) * cfg.F_M + static_cast<double>(cfg.N) * cfg.eta * cfg.Gamma_M;
  require(denom > 0.0, ErrorCode::InvalidArgument, "epsilon_prime: zero denominator");
  return eps / denom;
}

double theorem3_bound(const GftplConfig& cfg, double eps, std::size_t T) {
  const double t = static_cast<double>(T);
  return static_cast<double>(cfg.N) *
             std::sqrt(cfg.kappa * cfg.G_f * cfg.G_gamma * (cfg.G_f + 2.0 * eps) / cfg.delta * t) +
         eps * t;
}

GkpOracle brute_gkp_oracle() {
  return [](const MultiGkp& inst, double) { return brute_oracle(inst); };
}

GkpOracle fptas_gkp_oracle() {
  return [](const MultiGkp& inst, double rel) { return fptas_oracle(inst, rel); };
}

Admissibility check_admissibility(const std::vector<std::vector<double>>& gamma) {
  Admissibility a;
  a.distinct_rows = std::set<std::vector<double>>(gamma.begin(), gamma.end()).size() == gamma.size();
  if (gamma.empty()) return a;
  a.delta = std::numeric_limits<double>::infinity();
  const std::size_t cols = gamma.front().size();
  for (std::size_t j = 0; j < cols; ++j) {
    std::set<double> values;
    for (const auto& row : gamma) values.insert(row.at(j));
    a.kappa = std::max(a.kappa, values.size());
    for (auto it = values.begin(), nx = std::next(it); nx != values.end(); ++it, ++nx)
      a.delta = std::min(a.delta, *nx - *it);
  }
  return a;
}

RegretTrace gftpl_run(const GkpStatic& statics, std::span<const GkpRound> stream,
                      const GkpOracle& oracle, const GftplConfig& cfg, SeededRng& rng) {
  cfg.validate();
  statics.validate();
  const auto n = statics.item_count();
  require(cfg.N == n, ErrorCode::InvalidArgument,
          "distinguisher size N must equal the item count");
  for (const auto& r : stream) r.validate(n);

  const std::size_t T = stream.size();
  const auto a = draw_perturbation(cfg, rng);
  const auto markers = distinguisher_set(statics, cfg.marker_profit);
  const double rel_eps =
      cfg.schedule == EpsSchedule::Fptas && T > 0 ? epsilon_prime(cfg.eps, T, cfg) : 0.0;

  RegretTrace trace;
  trace.algorithm = "gftpl_gkp";
  trace.seed = rng.seed();
  trace.sense = Sense::Maximize;
  trace.value_name = "payoff";
  trace.cumulative_name = "cum_payoff";
  trace.extra_names = {"best_static_cum", "regret", "theorem3_bound", "perturbed_value"};
  trace.csv_columns = {"t",      "played_set", "payoff",        "cum_payoff",
                       "best_static_cum", "regret", "theorem3_bound"};
  trace.perturbation = a;

  MultiGkp history = aggregate(statics, {});
  for (std::size_t t = 0; t < T; ++t) {
    // Perturbed objective: history plus the marker rounds scaled by a_j.
    MultiGkp perturbed = history;
    for (std::size_t j = 0; j < markers.size(); ++j) perturbed.add_scaled_round(markers[j], a[j]);

    GkpSolution choice;
    try {
      choice = oracle(perturbed, rel_eps);
    } catch (const Error& e) {
      fail(e.code(), "round " + std::to_string(t + 1) + ": oracle failed: " + e.what());
    }
    require(std::all_of(choice.items.begin(), choice.items.end(),
                        [&](std::uint32_t i) { return i < n; }),
            ErrorCode::OracleFailure, "round " + std::to_string(t + 1) + ": invalid item set");
    const double perturbed_value = multi_gkp_profit(choice.items, perturbed);
    if (cfg.schedule == EpsSchedule::Fptas && perturbed_value < 0.0)
      fail(ErrorCode::OracleFailure, "round " + std::to_string(t + 1) +
                                         ": negative perturbed payoff under the FPTAS schedule");

    const double payoff = gkp_profit(choice.items, statics, stream[t]);
    trace.append(std::move(choice.items), payoff,
                 {0.0, 0.0, theorem3_bound(cfg, cfg.eps, t + 1), perturbed_value});
    history.add_round(stream[t]);
  }

  // Hindsight benchmark over the full stream, then per-round prefix columns.
  if (T > 0) {
    const auto best = brute_oracle(history);
    double best_cum = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      best_cum += gkp_profit(best.items, statics, stream[t]);
      trace.set_extra(t, "best_static_cum", best_cum);
      trace.set_extra(t, "regret", best_cum - trace.rows[t].cumulative);
    }
    trace.benchmark = best_cum;
  } else {
    trace.benchmark = 0.0;
  }
  return trace;
}

} // namespace mmo
