#pragma once

// Experiment orchestration: config parsing, seeded replicas, trace files,
// and comparison of empirical regret against the theoretical bounds.
//
// Config (JSON):
//   algorithm     "ogd_vc" | "gftpl_gkp" | "gap_solver"
//   T             horizon
//   seeds         explicit list, or base_seed + replicas (seed = base + s)
//   graph         graph file, or random_graph {n, p}          (ogd_vc, gap_solver)
//   weights       weight CSV, or adversary {kind: uniform|onehot, W}   (ogd_vc)
//   ogd           {step_mode: paper|scaled, W_bound, feas_tol, conv_tol, max_cycles}
//   gkp           GKP JSON whose rounds form the stream, or random_gkp {n, c}
//   gftpl         {oracle: brute|fptas, schedule: additive|fptas, eta, eps}
//   gap           {A, B, p_coeff, c_exp, eps, T_override, learner: ftl|ogd, expect}
//                 a positive T caps the gap horizon unless T_override is set
//   horizons      optional list of T values; see run_sweep
//   threads       worker count for replicas (default: hardware concurrency)
// Relative paths resolve against the config file's directory.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmo/trace.hpp"

namespace mmo {

/// R^alpha: cumulative - alpha * benchmark when minimizing, alpha * benchmark
/// - cumulative when maximizing. Empty traces have regret 0.
double compute_regret(const RegretTrace& trace, double alpha);

struct SeedResult {
  std::uint64_t seed = 0;
  double total = 0.0;
  double benchmark = 0.0;
  double regret = 0.0;
  double bound = 0.0;
  bool pass = true;
  std::string answer;  // gap_solver only: "Yes" / "No"
  std::string trace_file;
};

struct ExperimentSummary {
  std::string algorithm;
  std::size_t T = 0;
  double alpha = 1.0;
  std::vector<SeedResult> seeds;
  double mean_regret = 0.0;
  double max_regret = 0.0;
  double mean_bound = 0.0;
  bool all_pass = true;
};

std::string to_json(const ExperimentSummary& summary);

struct Experiment {
  ExperimentSummary summary;
  std::vector<RegretTrace> traces;  // one per seed, in seed order
};

/// Runs every replica. When output_dir is non-empty, writes one trace CSV per
/// seed plus summary.json there.
Experiment run_experiment(const std::string& config_json, const std::string& base_dir,
                          const std::string& output_dir);

struct BoundReport {
  std::string algorithm;
  bool per_seed_pass = true;  // every seed within its bound
  bool mean_pass = true;      // mean regret within mean bound
  bool pass = true;           // the criterion that matches the guarantee
  std::vector<std::string> violations;
};

/// OGD's guarantee is deterministic, so every seed must be within bound;
/// GFTPL's is in expectation, so the seed mean is compared.
BoundReport compare_bounds(const ExperimentSummary& summary);

/// True iff mean regret / T is non-increasing along increasing horizons.
bool vanishing_regret(const std::vector<std::pair<std::size_t, double>>& mean_regret_by_T);

std::string to_json(const BoundReport& report);

struct Sweep {
  std::vector<ExperimentSummary> runs;  // one per horizon, ascending T
  bool vanishing = true;
  bool all_pass = true;  // every run passes and regret is vanishing
};

/// Runs the config once per entry of its "horizons" array, each into
/// output_dir/T<horizon> when output_dir is non-empty.
Sweep run_sweep(const std::string& config_json, const std::string& base_dir,
                const std::string& output_dir);

std::string to_json(const Sweep& sweep);

} // namespace mmo
