#pragma once

// Online gradient descent for min-max vertex cover on the fractional cover
// polytope Q = { x in [0,1]^n : x_i + x_j >= 1 for every edge }, with
// half-rounding to play an integral cover each round.

#include <cstddef>
#include <span>
#include <vector>

#include "mmo/instances.hpp"
#include "mmo/rng.hpp"
#include "mmo/minmax.hpp"
#include "mmo/trace.hpp"

namespace mmo {

enum class StepMode {
  Paper,   // 1/sqrt(t)
  Scaled,  // sqrt(n) / (W_bound sqrt(t)), i.e. D/(G sqrt(t))
};

struct OgdConfig {
  double W_bound = 1.0;
  StepMode step_mode = StepMode::Scaled;
  double feas_tol = 1e-8;
  double conv_tol = 1e-12;
  std::size_t max_cycles = 200000;

  void validate() const;
};

/// Point of Q. Construction does not check membership; see in_vc_polytope.
struct FractionalPoint {
  std::vector<double> x;
};

/// Largest violation of the box and edge constraints (0 when inside Q).
double vc_polytope_violation(const Graph& g, std::span<const double> x);
bool in_vc_polytope(const Graph& g, std::span<const double> x, double tol);

/// w_{i*} at i* = argmax_i w_i x_i (smallest index on ties), zero elsewhere.
std::vector<double> subgradient(std::span<const double> w, std::span<const double> x);

struct ProjectionStats {
  std::size_t cycles = 0;
  double last_change = 0.0;  // max-norm movement over the final cycle
  double violation = 0.0;
};

/// Euclidean projection onto Q by Dykstra's alternating projections over the
/// box and one half-space per edge. Throws NotConverged after max_cycles.
FractionalPoint project_vc_polytope(std::span<const double> y, const Graph& g,
                                    const OgdConfig& cfg, ProjectionStats* stats = nullptr);

/// {i : x_i >= 1/2}
Subset round_half(std::span<const double> x);

struct ProjectionCheck {
  std::size_t samples = 0;
  double max_violation = 0.0;        // of project(y)
  double max_idempotence_gap = 0.0;  // max-norm |project(project(y)) - project(y)|
  double max_optimality_gap = 0.0;   // max over z of |y - project(y)| - |y - z|
  bool pass = true;
};

/// Projects random y in [-0.5, 1.5]^n and compares against random feasible z.
/// Passes at feasibility 1e-8, idempotence 1e-8, optimality slack 1e-6.
ProjectionCheck check_projection(const Graph& g, std::size_t samples, std::size_t comparators,
                                 SeededRng& rng, const OgdConfig& cfg = {});

/// 3 W sqrt(n T): the additive term of the 2-regret guarantee.
double theorem2_bound(double W, std::size_t n, std::size_t T);

/// Incremental form of the algorithm, usable as a learner that is fed one
/// weight row at a time.
class OgdVcLearner {
public:
  OgdVcLearner(Graph g, OgdConfig cfg);

  /// Integral cover for the current round.
  Subset play() const { return round_half(point_.x); }
  const FractionalPoint& point() const noexcept { return point_; }
  std::size_t round() const noexcept { return t_; }

  /// Subgradient step on w with the current round's step size, then projects.
  void observe(std::span<const double> w);

private:
  Graph graph_;
  OgdConfig cfg_;
  FractionalPoint point_;
  std::size_t t_ = 1;
};

/// Runs T rounds on seq. Each round plays round_half(x^t) before seeing
/// w^t, pays max_{i in X^t} w^t_i, then steps and projects. Trace columns:
/// t, played_set, int_cost, frac_cost, cum_int, cum_frac, bound_additive.
RegretTrace ogd_run(const Graph& g, const WeightSequence& seq, const OgdConfig& cfg);

} // namespace mmo
