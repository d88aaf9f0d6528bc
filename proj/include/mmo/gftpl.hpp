#pragma once

// Generalized Follow-the-Perturbed-Leader for online GKP. The translation
// matrix is implemented by the distinguisher rounds, so the perturbation
// a . Gamma_x becomes extra GKP rounds whose profits are scaled by a_j and
// a single multi-instance oracle call per round suffices.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mmo/gkp.hpp"
#include "mmo/rng.hpp"
#include "mmo/trace.hpp"

namespace mmo {

enum class EpsSchedule {
  Additive,  // oracle within additive eps of the perturbed leader
  Fptas,     // oracle within factor (1 - eps'), eps' = epsilon_prime(eps, T, cfg)
};

struct GftplConfig {
  std::size_t N = 0;      // distinguisher size (= item count for GKP)
  double eta = 0.0;       // perturbation range
  double kappa = 2.0;     // admissibility: distinct values per column
  double delta = 1.0;     // admissibility: gap between column values
  double G_gamma = 1.0;   // translation matrix diameter
  double Gamma_M = 1.0;   // largest translation matrix entry
  double G_f = 0.0;       // payoff diameter
  double F_M = 0.0;       // largest payoff
  double marker_profit = 1.0;
  EpsSchedule schedule = EpsSchedule::Additive;
  double eps = 0.0;       // additive optimization parameter

  void validate() const;
};

/// Perturbation range that balances the stability and perturbation terms:
/// sqrt(kappa G_f (G_f + 2 eps) T / (delta G_gamma)).
double default_eta(double kappa, double G_f, double G_gamma, double delta, double eps,
                   std::size_t T);

/// Payoff bounds for a GKP stream: F_M >= every payoff, F_M - G_f <= every payoff.
struct PayoffRange {
  double F_M = 0.0;
  double G_f = 0.0;
};
PayoffRange gkp_payoff_range(const GkpStatic& statics, std::span<const GkpRound> rounds);

/// Config for an n-item GKP stream of horizon T with the distinguisher
/// translation matrix (kappa = 2, delta = G_gamma = Gamma_M = P), eps = T^{-1/2}
/// and the default eta.
GftplConfig default_gkp_config(const GkpStatic& statics, std::span<const GkpRound> stream,
                               EpsSchedule schedule);

/// a ~ U[0, eta]^N, drawn once per run.
std::vector<double> draw_perturbation(const GftplConfig& cfg, SeededRng& rng);

/// eps / (T F_M + N eta Gamma_M)
double epsilon_prime(double eps, std::size_t T, const GftplConfig& cfg);

/// N sqrt(kappa G_f G_gamma (G_f + 2 eps) / delta * T) + eps T
double theorem3_bound(const GftplConfig& cfg, double eps, std::size_t T);

/// Multi-instance maximizer. relative_eps is 0 under the additive schedule.
using GkpOracle = std::function<GkpSolution(const MultiGkp& inst, double relative_eps)>;

GkpOracle brute_gkp_oracle();
GkpOracle fptas_gkp_oracle();

struct Admissibility {
  bool distinct_rows = false;
  std::size_t kappa = 0;  // max distinct values in a column
  double delta = 0.0;     // min gap between distinct values in a column
};
Admissibility check_admissibility(const std::vector<std::vector<double>>& gamma);

/// Runs the perturbed leader over the stream. Trace columns: t, played_set,
/// payoff, cum_payoff, best_static_cum, regret, theorem3_bound; the extra
/// column perturbed_value holds the oracle's objective for the played set.
RegretTrace gftpl_run(const GkpStatic& statics, std::span<const GkpRound> stream,
                      const GkpOracle& oracle, const GftplConfig& cfg, SeededRng& rng);

} // namespace mmo
