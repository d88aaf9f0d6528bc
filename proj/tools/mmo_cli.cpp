// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmo/mmo.h"

namespace {

struct CliError {
  mmo_status status;
};

void check(mmo_status s) {
  if (s != MMO_OK) throw CliError{s};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  mmo_string_free(s);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to path, or stdout when path is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text << '\n';
}

template <typename H>
struct Owned {
  H* ptr = nullptr;
  void (*del)(H*);
  explicit Owned(void (*d)(H*)) : del(d) {}
  ~Owned() { if (ptr) del(ptr); }
  Owned(const Owned&) = delete;
  Owned& operator=(const Owned&) = delete;
};

using GraphH = Owned<mmo_graph>;
using WeightsH = Owned<mmo_weights>;
using GkpH = Owned<mmo_gkp>;
using FormulaH = Owned<mmo_formula>;

std::string serialize_weights(const mmo_weights* w) {
  char* s = nullptr;
  check(mmo_weights_serialize(w, &s));
  return take(s);
}

std::string serialize_graph(const mmo_graph* g) {
  char* s = nullptr;
  check(mmo_graph_serialize(g, &s));
  return take(s);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Min-max online learning toolkit: generators, experiments, validators, bounds."};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---------------------------------------------------------------- gen
  auto* gen = app.add_subcommand("gen", "Instance generators");
  gen->require_subcommand(1);
  std::string out_path;
  uint64_t seed = 0;
  uint32_t n = 10;
  double p = 0.4, W = 1.0, c = 1.0;
  size_t T = 100, rounds = 5, m = 5;
  bool onehot = false;
  std::string src;

  auto* gen_graph = gen->add_subcommand("graph", "Erdos-Renyi graph G(n, p)");
  gen_graph->add_option("--n", n, "vertices")->capture_default_str();
  gen_graph->add_option("--p", p, "edge probability")->capture_default_str();
  auto* gen_weights = gen->add_subcommand("weights", "Adversary weight sequence");
  gen_weights->add_option("--n", n, "width")->capture_default_str();
  gen_weights->add_option("--T", T, "rounds")->capture_default_str();
  gen_weights->add_option("--W", W, "uniform weights in [0, W]")->capture_default_str();
  gen_weights->add_flag("--onehot", onehot, "one-hot rows instead of uniform");
  auto* gen_gkp = gen->add_subcommand("gkp", "Random generalized knapsack instance set");
  gen_gkp->add_option("--n", n, "items")->capture_default_str();
  gen_gkp->add_option("--rounds", rounds, "rounds")->capture_default_str();
  gen_gkp->add_option("--c", c, "excess penalty")->capture_default_str();
  auto* gen_dnf = gen->add_subcommand("dnf", "Random 3-DNF formula");
  gen_dnf->add_option("--n", n, "variables")->capture_default_str();
  gen_dnf->add_option("--m", m, "clauses")->capture_default_str();
  auto* gen_matching =
      gen->add_subcommand("matching", "3-DNF to multi-instance perfect matching gadget");
  auto* gen_path = gen->add_subcommand("path", "3-DNF to multi-instance path gadget");
  auto* gen_vc = gen->add_subcommand("vc", "Vertex cover to multi-instance min-max vertex cover");
  auto* gen_p3 = gen->add_subcommand("p3", "3-coloring to multi-instance P3||Cmax");
  for (auto* sc : {gen_matching, gen_path})
    sc->add_option("formula", src, "3-DNF formula file")->required()->check(CLI::ExistingFile);
  for (auto* sc : {gen_vc, gen_p3})
    sc->add_option("graph", src, "graph file")->required()->check(CLI::ExistingFile);
  for (auto* sc : {gen_graph, gen_weights, gen_gkp, gen_dnf})
    sc->add_option("--seed", seed, "RNG seed")->capture_default_str();
  for (auto* sc : {gen_graph, gen_weights, gen_gkp, gen_dnf, gen_vc, gen_p3})
    sc->add_option("-o,--out", out_path, "output file (default stdout)");
  for (auto* sc : {gen_matching, gen_path})
    sc->add_option("-o,--out", out_path,
                   "output prefix: writes <prefix>.graph (matching) and <prefix>.weights")
        ->required();

  gen_graph->callback([&] {
    GraphH g(mmo_graph_free);
    check(mmo_graph_random(n, p, seed, &g.ptr));
    emit(out_path, serialize_graph(g.ptr));
  });
  gen_weights->callback([&] {
    WeightsH w(mmo_weights_free);
    check(onehot ? mmo_weights_onehot(n, T, seed, &w.ptr)
                 : mmo_weights_uniform(n, T, W, seed, &w.ptr));
    emit(out_path, serialize_weights(w.ptr));
  });
  gen_gkp->callback([&] {
    GkpH k(mmo_gkp_free);
    check(mmo_gkp_random(n, rounds, c, seed, &k.ptr));
    char* s = nullptr;
    check(mmo_gkp_serialize(k.ptr, &s));
    emit(out_path, take(s));
  });
  gen_dnf->callback([&] {
    FormulaH f(mmo_formula_free);
    check(mmo_formula_random(n, m, seed, &f.ptr));
    char* s = nullptr;
    check(mmo_formula_serialize(f.ptr, &s));
    emit(out_path, take(s));
  });
  gen_matching->callback([&] {
    FormulaH f(mmo_formula_free);
    check(mmo_formula_load(src.c_str(), &f.ptr));
    GraphH g(mmo_graph_free);
    WeightsH w(mmo_weights_free);
    check(mmo_reduce_dnf_to_matching(f.ptr, &g.ptr, &w.ptr));
    emit(out_path + ".graph", serialize_graph(g.ptr));
    emit(out_path + ".weights", serialize_weights(w.ptr));
  });
  gen_path->callback([&] {
    FormulaH f(mmo_formula_free);
    check(mmo_formula_load(src.c_str(), &f.ptr));
    uint32_t stages = 0;
    WeightsH w(mmo_weights_free);
    check(mmo_reduce_dnf_to_path(f.ptr, &stages, &w.ptr));
    emit(out_path + ".weights", serialize_weights(w.ptr));
    std::cout << "stages=" << stages << " arcs=" << 2 * stages << '\n';
  });
  gen_vc->callback([&] {
    GraphH g(mmo_graph_free);
    check(mmo_graph_load(src.c_str(), &g.ptr));
    WeightsH w(mmo_weights_free);
    check(mmo_reduce_vc(g.ptr, &w.ptr));
    emit(out_path, serialize_weights(w.ptr));
  });
  gen_p3->callback([&] {
    GraphH g(mmo_graph_free);
    check(mmo_graph_load(src.c_str(), &g.ptr));
    WeightsH w(mmo_weights_free);
    check(mmo_reduce_3color_to_p3(g.ptr, &w.ptr));
    emit(out_path, serialize_weights(w.ptr));
  });

  // ---------------------------------------------------------------- run
  auto* run = app.add_subcommand("run", "Run an experiment config (JSON)");
  std::string config_path, run_out = "runs";
  run->add_option("config", config_path, "experiment config")->required()->check(CLI::ExistingFile);
  run->add_option("--out", run_out, "output directory for traces and summary")
      ->capture_default_str();
  run->callback([&] {
    const std::string text = slurp(config_path);
    const std::string base = std::filesystem::path(config_path).parent_path().string();
    int pass = 0;
    char* summary = nullptr;
    check(mmo_run_experiment(text.c_str(), base.c_str(), run_out.c_str(), &pass, &summary));
    emit("", take(summary));
    if (!pass) exit_code = 1;
  });

  // ---------------------------------------------------------------- verify
  auto* verify = app.add_subcommand("verify", "Validators");
  verify->require_subcommand(1);
  auto* v_red = verify->add_subcommand("reductions", "Exhaustive gadget correspondence check");
  std::string formula_path, formula_id;
  v_red->add_option("formula", formula_path, "3-DNF formula file")
      ->required()
      ->check(CLI::ExistingFile);
  v_red->add_option("--id", formula_id, "formula id for the report (default: file name)");
  v_red->callback([&] {
    FormulaH f(mmo_formula_free);
    check(mmo_formula_load(formula_path.c_str(), &f.ptr));
    if (formula_id.empty()) formula_id = std::filesystem::path(formula_path).filename().string();
    size_t violations = 0;
    char* report = nullptr;
    check(mmo_verify_reductions(f.ptr, formula_id.c_str(), &violations, &report));
    emit("", take(report));
    if (violations) exit_code = 1;
  });

  auto* v_proj = verify->add_subcommand("projection", "Projection feasibility and optimality");
  std::string graph_path;
  size_t samples = 100, comparators = 100;
  uint64_t vseed = 1;
  v_proj->add_option("graph", graph_path, "graph file")->required()->check(CLI::ExistingFile);
  v_proj->add_option("--samples", samples, "random points y")->capture_default_str();
  v_proj->add_option("--comparators", comparators, "feasible z per y")->capture_default_str();
  v_proj->add_option("--seed", vseed, "RNG seed")->capture_default_str();
  v_proj->callback([&] {
    GraphH g(mmo_graph_free);
    check(mmo_graph_load(graph_path.c_str(), &g.ptr));
    int pass = 0;
    char* report = nullptr;
    check(mmo_verify_projection(g.ptr, samples, comparators, vseed, &pass, &report));
    emit("", take(report));
    if (!pass) exit_code = 1;
  });

  // ---------------------------------------------------------------- bench
  auto* bench = app.add_subcommand("bench", "Benchmarks");
  bench->require_subcommand(1);
  auto* b_oracle = bench->add_subcommand("oracle", "FPTAS vs brute-force on a GKP instance set");
  std::string gkp_path, bench_out;
  std::vector<double> eps_list;
  b_oracle->add_option("gkp", gkp_path, "GKP JSON file")->required()->check(CLI::ExistingFile);
  b_oracle->add_option("--eps", eps_list, "approximation parameter(s)")->required();
  b_oracle->add_option("-o,--out", bench_out, "CSV output file (default stdout)");
  b_oracle->callback([&] {
    GkpH k(mmo_gkp_free);
    check(mmo_gkp_load(gkp_path.c_str(), &k.ptr));
    int pass = 0;
    char* csv = nullptr;
    check(mmo_bench_oracle(k.ptr, eps_list.data(), eps_list.size(), &pass, &csv));
    std::string text = take(csv);
    if (!text.empty() && text.back() == '\n') text.pop_back();
    emit(bench_out, text);
    if (!pass) exit_code = 1;
  });

  // ---------------------------------------------------------------- bound
  auto* bound = app.add_subcommand("bound", "Evaluate theoretical bounds");
  bound->require_subcommand(1);
  double bW = 1, kappa = 2, delta = 1, G_f = 1, G_gamma = 1, eps = 0.1, F_M = 1, eta = 0,
         Gamma_M = 1, A = 0.25, B = 0.5, p_coeff = 1, c_exp = 0.5;
  size_t bn = 1, bT = 1, bN = 1;
  auto* t2 = bound->add_subcommand("theorem2", "3 W sqrt(n T)");
  t2->add_option("--W", bW)->capture_default_str();
  t2->add_option("--n", bn)->capture_default_str();
  t2->add_option("--T", bT)->capture_default_str();
  auto* t3 = bound->add_subcommand(
      "theorem3", "N sqrt(kappa G_f G_gamma (G_f + 2 eps) T / delta) + eps T");
  t3->add_option("--N", bN)->capture_default_str();
  t3->add_option("--kappa", kappa)->capture_default_str();
  t3->add_option("--delta", delta)->capture_default_str();
  t3->add_option("--G_f", G_f)->capture_default_str();
  t3->add_option("--G_gamma", G_gamma)->capture_default_str();
  t3->add_option("--eps", eps)->capture_default_str();
  t3->add_option("--T", bT)->capture_default_str();
  auto* ep = bound->add_subcommand("epsilon-prime", "eps / (T F_M + N eta Gamma_M)");
  ep->add_option("--eps", eps)->capture_default_str();
  ep->add_option("--T", bT)->capture_default_str();
  ep->add_option("--F_M", F_M)->capture_default_str();
  ep->add_option("--N", bN)->capture_default_str();
  ep->add_option("--eta", eta)->capture_default_str();
  ep->add_option("--Gamma_M", Gamma_M)->capture_default_str();
  auto* gh = bound->add_subcommand("gap-horizon", "ceil((A eps / (2 p(n) B))^(1/(c-1)))");
  gh->add_option("--A", A)->capture_default_str();
  gh->add_option("--B", B)->capture_default_str();
  gh->add_option("--p", p_coeff, "p(n) = p n")->capture_default_str();
  gh->add_option("--c", c_exp)->capture_default_str();
  gh->add_option("--eps", eps)->capture_default_str();
  gh->add_option("--n", bn)->capture_default_str();

  auto print_real = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::cout << buf << '\n';
  };
  t2->callback([&] {
    double v = 0;
    check(mmo_bound_theorem2(bW, bn, bT, &v));
    print_real(v);
  });
  t3->callback([&] {
    double v = 0;
    check(mmo_bound_theorem3(bN, kappa, delta, G_f, G_gamma, eps, bT, &v));
    print_real(v);
  });
  ep->callback([&] {
    double v = 0;
    check(mmo_epsilon_prime(eps, bT, F_M, bN, eta, Gamma_M, &v));
    print_real(v);
  });
  gh->callback([&] {
    uint64_t v = 0;
    check(mmo_gap_horizon(A, B, p_coeff, c_exp, eps, bn, &v));
    std::cout << v << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const CliError& e) {
    std::cerr << "error (" << mmo_status_name(e.status) << "): " << mmo_last_error() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return exit_code;
}
