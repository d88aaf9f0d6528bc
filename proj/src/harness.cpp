#include "mmo/harness.hpp"

#include <algorithm>
#include <filesystem>
#include <thread>

#include <json.hpp>

#include "mmo/error.hpp"
#include "mmo/gftpl.hpp"
#include "mmo/ogd.hpp"
#include "mmo/reductions.hpp"

namespace mmo {

namespace fs = std::filesystem;
using nlohmann::json;

double compute_regret(const RegretTrace& trace, double alpha) {
  if (trace.rows.empty()) return 0.0;
  require(trace.benchmark.has_value(), ErrorCode::InvalidArgument, "trace has no benchmark");
  if (trace.sense == Sense::Minimize) {
    require(alpha >= 1.0, ErrorCode::InvalidArgument, "minimization alpha must be >= 1");
    return trace.total() - alpha * *trace.benchmark;
  }
  require(alpha > 0.0 && alpha <= 1.0, ErrorCode::InvalidArgument,
          "maximization alpha must be in (0, 1]");
  return alpha * *trace.benchmark - trace.total();
}

namespace {

struct ReplicaResult {
  RegretTrace trace;
  SeedResult result;
};

std::string resolve(const std::string& base_dir, const std::string& path) {
  fs::path p(path);
  if (p.is_absolute() || base_dir.empty()) return p.string();
  return (fs::path(base_dir) / p).string();
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

OgdConfig parse_ogd(const json& j) {
  OgdConfig cfg;
  if (j.is_null()) return cfg;
  const auto mode = get_or<std::string>(j, "step_mode", "scaled");
  require(mode == "paper" || mode == "scaled", ErrorCode::InvalidArgument,
          "ogd.step_mode must be paper or scaled");
  cfg.step_mode = mode == "paper" ? StepMode::Paper : StepMode::Scaled;
  cfg.W_bound = get_or(j, "W_bound", cfg.W_bound);
  cfg.feas_tol = get_or(j, "feas_tol", cfg.feas_tol);
  cfg.conv_tol = get_or(j, "conv_tol", cfg.conv_tol);
  cfg.max_cycles = get_or(j, "max_cycles", cfg.max_cycles);
  cfg.validate();
  return cfg;
}

Graph load_graph(const json& cfg, const std::string& base_dir, SeededRng& rng) {
  if (cfg.contains("graph")) return parse_graph(read_file(resolve(base_dir, cfg.at("graph"))));
  require(cfg.contains("random_graph"), ErrorCode::InvalidArgument,
          "config needs graph or random_graph");
  const auto& rg = cfg.at("random_graph");
  if (rg.contains("seed")) {
    SeededRng own(rg.at("seed").get<std::uint64_t>());
    return gen_random_graph(rg.at("n").get<std::uint32_t>(), rg.at("p").get<double>(), own);
  }
  return gen_random_graph(rg.at("n").get<std::uint32_t>(), rg.at("p").get<double>(), rng);
}

ReplicaResult run_ogd_replica(const json& cfg, const std::string& base_dir, std::size_t T,
                              std::uint64_t seed) {
  SeededRng rng(seed);
  const Graph g = load_graph(cfg, base_dir, rng);
  const OgdConfig ogd = parse_ogd(cfg.value("ogd", json()));

  WeightSequence seq(g.vertex_count());
  if (cfg.contains("weights")) {
    const auto file = parse_weights(read_file(resolve(base_dir, cfg.at("weights"))));
    require(file.width() == g.vertex_count(), ErrorCode::DimensionMismatch,
            "weight file width differs from vertex count");
    require(file.length() >= T, ErrorCode::InvalidArgument, "weight file shorter than T");
    for (std::size_t t = 0; t < T; ++t) seq.push_back(file.row(t));
  } else {
    const json adv = cfg.value("adversary", json{{"kind", "uniform"}});
    const auto kind = get_or<std::string>(adv, "kind", "uniform");
    if (kind == "uniform")
      seq = gen_uniform_weights(g.vertex_count(), T, get_or(adv, "W", ogd.W_bound), rng);
    else if (kind == "onehot")
      seq = gen_onehot_weights(g.vertex_count(), T, rng);
    else
      fail(ErrorCode::InvalidArgument, "unknown adversary kind " + kind);
  }

  ReplicaResult out;
  out.trace = ogd_run(g, seq, ogd);
  out.trace.seed = seed;
  const auto best = best_static_vc_hindsight(g, seq);
  out.trace.benchmark = best.cost;

  double W = 0.0;
  for (const auto& row : seq.rows())
    for (double v : row) W = std::max(W, v);
  auto& r = out.result;
  r.seed = seed;
  r.total = out.trace.total();
  r.benchmark = best.cost;
  r.regret = compute_regret(out.trace, 2.0);
  r.bound = theorem2_bound(W, g.vertex_count(), T);
  r.pass = r.regret <= r.bound;
  return out;
}

ReplicaResult run_gftpl_replica(const json& cfg, const std::string& base_dir, std::size_t T,
                                std::uint64_t seed) {
  SeededRng rng(seed);
  GkpInstanceSet set;
  if (cfg.contains("gkp")) {
    set = parse_gkp(read_file(resolve(base_dir, cfg.at("gkp"))));
    require(set.rounds.size() >= T, ErrorCode::InvalidArgument, "gkp file has fewer rounds than T");
    set.rounds.resize(T);
  } else {
    require(cfg.contains("random_gkp"), ErrorCode::InvalidArgument,
            "config needs gkp or random_gkp");
    const auto& rg = cfg.at("random_gkp");
    set = gen_random_gkp(rg.at("n").get<std::uint32_t>(), T, get_or(rg, "c", 1.0), rng);
  }

  const json g = cfg.value("gftpl", json::object());
  const auto schedule_name = get_or<std::string>(g, "schedule", "additive");
  require(schedule_name == "additive" || schedule_name == "fptas", ErrorCode::InvalidArgument,
          "gftpl.schedule must be additive or fptas");
  const auto schedule = schedule_name == "fptas" ? EpsSchedule::Fptas : EpsSchedule::Additive;
  GftplConfig gc = default_gkp_config(set.statics, set.rounds, schedule);
  if (g.contains("eps")) {
    gc.eps = g.at("eps").get<double>();
    gc.eta = default_eta(gc.kappa, gc.G_f, gc.G_gamma, gc.delta, gc.eps, T);
  }
  if (g.contains("eta")) gc.eta = g.at("eta").get<double>();
  const auto oracle_name = get_or<std::string>(g, "oracle", "brute");
  require(oracle_name == "brute" || oracle_name == "fptas", ErrorCode::InvalidArgument,
          "gftpl.oracle must be brute or fptas");
  const GkpOracle oracle = oracle_name == "fptas" ? fptas_gkp_oracle() : brute_gkp_oracle();

  ReplicaResult out;
  out.trace = gftpl_run(set.statics, set.rounds, oracle, gc, rng);
  out.trace.seed = seed;
  auto& r = out.result;
  r.seed = seed;
  r.total = out.trace.total();
  r.benchmark = *out.trace.benchmark;
  r.regret = compute_regret(out.trace, 1.0);
  r.bound = theorem3_bound(gc, gc.eps, T);
  r.pass = r.regret <= r.bound;
  return out;
}

ReplicaResult run_gap_replica(const json& cfg, const std::string& base_dir, std::size_t T,
                              std::uint64_t seed) {
  SeededRng rng(seed);
  const Graph g = load_graph(cfg, base_dir, rng);
  const json gj = cfg.value("gap", json::object());
  GapConfig gc;
  gc.A = get_or(gj, "A", gc.A);
  gc.B = get_or(gj, "B", gc.B);
  gc.p_coeff = get_or(gj, "p_coeff", gc.p_coeff);
  gc.c_exp = get_or(gj, "c_exp", gc.c_exp);
  if (gj.contains("T_override"))
    gc.T_override = gj.at("T_override").get<std::size_t>();
  else if (T > 0)
    gc.T_override = T;
  const double eps = get_or(gj, "eps", 1.0);

  std::unique_ptr<VcLearner> learner;
  const auto kind = get_or<std::string>(gj, "learner", "ftl");
  if (kind == "ftl")
    learner = std::make_unique<FollowTheLeaderVc>(g);
  else if (kind == "ogd")
    learner = std::make_unique<OgdVcAdapter>(g, parse_ogd(cfg.value("ogd", json())));
  else
    fail(ErrorCode::InvalidArgument, "gap.learner must be ftl or ogd");

  const GapOutcome outcome = gap_solver(g, gc, eps, *learner, rng);

  ReplicaResult out;
  auto& tr = out.trace;
  tr.algorithm = "gap_solver";
  tr.seed = seed;
  tr.sense = Sense::Minimize;
  tr.value_name = "cost";
  tr.cumulative_name = "cum_cost";
  tr.extra_names = {"cover_size"};
  tr.csv_columns = {"t", "cover_size", "cost", "cum_cost"};
  // A Yes round stops before feedback, so its cost column is 0.
  for (std::size_t t = 0; t < outcome.rounds; ++t) {
    const double cost = t < outcome.costs.size() ? outcome.costs[t] : 0.0;
    tr.append({}, cost, {static_cast<double>(outcome.played_sizes[t])});
  }

  auto& r = out.result;
  r.seed = seed;
  r.answer = outcome.answer == GapAnswer::Yes ? "Yes" : "No";
  const auto expect = get_or<std::string>(gj, "expect", "");
  r.pass = expect.empty() || expect == r.answer;
  return out;
}

} // namespace

Experiment run_experiment(const std::string& config_json, const std::string& base_dir,
                          const std::string& output_dir) {
  json cfg;
  try {
    cfg = json::parse(config_json);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Parse, std::string("config: ") + e.what());
  }

  Experiment ex;
  std::vector<std::uint64_t> seeds;
  try {
    ex.summary.algorithm = cfg.at("algorithm").get<std::string>();
    ex.summary.T = cfg.at("T").get<std::size_t>();
    if (cfg.contains("seeds")) {
      seeds = cfg.at("seeds").get<std::vector<std::uint64_t>>();
    } else {
      const auto base = get_or<std::uint64_t>(cfg, "base_seed", 0);
      const auto replicas = get_or<std::size_t>(cfg, "replicas", 1);
      for (std::size_t s = 0; s < replicas; ++s) seeds.push_back(base + s);
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("config: ") + e.what());
  }
  const auto& algo = ex.summary.algorithm;
  require(algo == "ogd_vc" || algo == "gftpl_gkp" || algo == "gap_solver",
          ErrorCode::InvalidArgument, "unknown algorithm " + algo);
  ex.summary.alpha = algo == "ogd_vc" ? 2.0 : 1.0;

  auto run_one = [&](std::uint64_t seed) -> ReplicaResult {
    try {
      if (algo == "ogd_vc") return run_ogd_replica(cfg, base_dir, ex.summary.T, seed);
      if (algo == "gftpl_gkp") return run_gftpl_replica(cfg, base_dir, ex.summary.T, seed);
      return run_gap_replica(cfg, base_dir, ex.summary.T, seed);
    } catch (const Error& e) {
      fail(e.code(), "seed " + std::to_string(seed) + ": " + e.what());
    } catch (const json::exception& e) {
      fail(ErrorCode::Parse, "seed " + std::to_string(seed) + ": config: " + e.what());
    }
  };

  // Replicas are independent; each worker owns whole replicas.
  std::vector<ReplicaResult> results(seeds.size());
  std::vector<std::exception_ptr> errors(seeds.size());
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      std::min<std::size_t>(get_or<std::size_t>(cfg, "threads", hw), std::max<std::size_t>(1, seeds.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < seeds.size(); i += workers) {
          try {
            results[i] = run_one(seeds[i]);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  if (!output_dir.empty()) fs::create_directories(output_dir);
  auto& sum = ex.summary;
  for (auto& rr : results) {
    rr.trace.config_json = cfg.dump();
    if (!output_dir.empty()) {
      rr.result.trace_file = algo + "_seed" + std::to_string(rr.result.seed) + ".csv";
      write_file((fs::path(output_dir) / rr.result.trace_file).string(), to_csv(rr.trace));
    }
    sum.seeds.push_back(rr.result);
    ex.traces.push_back(std::move(rr.trace));
  }
  if (!sum.seeds.empty()) {
    double total_regret = 0.0, total_bound = 0.0;
    sum.max_regret = sum.seeds.front().regret;
    for (const auto& s : sum.seeds) {
      total_regret += s.regret;
      total_bound += s.bound;
      sum.max_regret = std::max(sum.max_regret, s.regret);
    }
    sum.mean_regret = total_regret / static_cast<double>(sum.seeds.size());
    sum.mean_bound = total_bound / static_cast<double>(sum.seeds.size());
  }
  sum.all_pass = compare_bounds(sum).pass;
  if (!output_dir.empty())
    write_file((fs::path(output_dir) / "summary.json").string(), to_json(sum) + "\n");
  return ex;
}

BoundReport compare_bounds(const ExperimentSummary& summary) {
  BoundReport rep;
  rep.algorithm = summary.algorithm;
  for (const auto& s : summary.seeds) {
    if (!s.pass) {
      rep.per_seed_pass = false;
      if (summary.algorithm == "gap_solver")
        rep.violations.push_back("seed " + std::to_string(s.seed) + ": unexpected answer " +
                                 s.answer);
      else
        rep.violations.push_back("seed " + std::to_string(s.seed) + ": regret " +
                                 format_real(s.regret) + " > bound " + format_real(s.bound));
    }
  }
  rep.mean_pass = summary.mean_regret <= summary.mean_bound;
  if (summary.algorithm == "gftpl_gkp") {
    rep.pass = rep.mean_pass;
    if (!rep.mean_pass)
      rep.violations.push_back("mean regret " + format_real(summary.mean_regret) +
                               " > mean bound " + format_real(summary.mean_bound));
  } else {
    rep.pass = rep.per_seed_pass;
  }
  return rep;
}

bool vanishing_regret(const std::vector<std::pair<std::size_t, double>>& mean_regret_by_T) {
  auto sorted = mean_regret_by_T;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double prev = sorted[i - 1].second / static_cast<double>(sorted[i - 1].first);
    const double cur = sorted[i].second / static_cast<double>(sorted[i].first);
    if (cur > prev) return false;
  }
  return true;
}

std::string to_json(const ExperimentSummary& summary) {
  json j;
  j["algorithm"] = summary.algorithm;
  j["T"] = summary.T;
  j["alpha"] = summary.alpha;
  j["mean_regret"] = summary.mean_regret;
  j["max_regret"] = summary.max_regret;
  j["mean_bound"] = summary.mean_bound;
  j["all_pass"] = summary.all_pass;
  j["seeds"] = json::array();
  for (const auto& s : summary.seeds) {
    json e{{"seed", s.seed},   {"total", s.total}, {"benchmark", s.benchmark},
           {"regret", s.regret}, {"bound", s.bound}, {"pass", s.pass}};
    if (!s.answer.empty()) e["answer"] = s.answer;
    if (!s.trace_file.empty()) e["trace_file"] = s.trace_file;
    j["seeds"].push_back(std::move(e));
  }
  return j.dump(2);
}

Sweep run_sweep(const std::string& config_json, const std::string& base_dir,
                const std::string& output_dir) {
  json cfg;
  std::vector<std::size_t> horizons;
  try {
    cfg = json::parse(config_json);
    horizons = cfg.at("horizons").get<std::vector<std::size_t>>();
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("config: ") + e.what());
  }
  require(!horizons.empty(), ErrorCode::InvalidArgument, "horizons must be nonempty");
  std::sort(horizons.begin(), horizons.end());
  cfg.erase("horizons");

  Sweep sweep;
  std::vector<std::pair<std::size_t, double>> curve;
  for (std::size_t T : horizons) {
    cfg["T"] = T;
    const std::string dir =
        output_dir.empty() ? "" : (fs::path(output_dir) / ("T" + std::to_string(T))).string();
    auto ex = run_experiment(cfg.dump(), base_dir, dir);
    curve.emplace_back(T, ex.summary.mean_regret);
    sweep.all_pass = sweep.all_pass && ex.summary.all_pass;
    sweep.runs.push_back(std::move(ex.summary));
  }
  sweep.vanishing = vanishing_regret(curve);
  sweep.all_pass = sweep.all_pass && sweep.vanishing;
  if (!output_dir.empty())
    write_file((fs::path(output_dir) / "sweep.json").string(), to_json(sweep) + "\n");
  return sweep;
}

std::string to_json(const Sweep& sweep) {
  json j;
  j["runs"] = json::array();
  for (const auto& r : sweep.runs) {
    const double T = static_cast<double>(r.T);
    j["runs"].push_back({{"T", r.T},
                         {"mean_regret", r.mean_regret},
                         {"mean_regret_per_T", r.T == 0 ? 0.0 : r.mean_regret / T},
                         {"mean_bound", r.mean_bound},
                         {"all_pass", r.all_pass}});
  }
  j["vanishing_regret"] = sweep.vanishing;
  j["all_pass"] = sweep.all_pass;
  return j.dump(2);
}

std::string to_json(const BoundReport& report) {
  return json{{"algorithm", report.algorithm},
              {"per_seed_pass", report.per_seed_pass},
              {"mean_pass", report.mean_pass},
              {"pass", report.pass},
              {"violations", report.violations}}
      .dump(2);
}

} // namespace mmo
