#include "mmo/mmo.h"

#include <chrono>
#include <cmath>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mmo/error.hpp"
#include "mmo/gftpl.hpp"
#include "mmo/gkp.hpp"
#include "mmo/harness.hpp"
#include "mmo/instances.hpp"
#include "mmo/minmax.hpp"
#include "mmo/ogd.hpp"
#include "mmo/reductions.hpp"

struct mmo_graph {
  mmo::Graph value;
};
struct mmo_weights {
  mmo::WeightSequence value;
};
struct mmo_gkp {
  mmo::GkpInstanceSet value;
};
struct mmo_formula {
  mmo::Dnf3Formula value;
};

namespace {

thread_local std::string g_last_error;

mmo_status set_error(mmo_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <typename F>
mmo_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return MMO_OK;
  } catch (const mmo::Error& e) {
    return set_error(static_cast<mmo_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(MMO_ERR_TOO_LARGE, "out of memory");
  } catch (const std::exception& e) {
    return set_error(MMO_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(MMO_ERR_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* what) {
  mmo::require(p != nullptr, mmo::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void write_set(const mmo::Subset& s, uint32_t* out, size_t* len) {
  if (out)
    for (size_t i = 0; i < s.size(); ++i) out[i] = s[i];
  if (len) *len = s.size();
}

template <typename Handle, typename Value>
void emit(Handle** out, Value&& v) {
  need(out, "out");
  *out = new Handle{std::forward<Value>(v)};
}

} // namespace

extern "C" {

const char* mmo_last_error(void) { return g_last_error.c_str(); }

const char* mmo_status_name(mmo_status status) {
  switch (status) {
    case MMO_OK: return "ok";
    case MMO_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MMO_ERR_PARSE: return "parse error";
    case MMO_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case MMO_ERR_TOO_LARGE: return "instance too large";
    case MMO_ERR_NOT_CONVERGED: return "not converged";
    case MMO_ERR_NO_PERFECT_MATCHING: return "no perfect matching";
    case MMO_ERR_ODD_VERTEX_COUNT: return "odd vertex count";
    case MMO_ERR_IO: return "i/o error";
    case MMO_ERR_ORACLE_FAILURE: return "oracle failure";
    case MMO_ERR_NON_COVER: return "non-cover play";
    case MMO_ERR_GRID_OVERFLOW: return "grid overflow";
    case MMO_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void mmo_string_free(char* s) { std::free(s); }

// ---------------------------------------------------------------- graphs

mmo_status mmo_graph_parse(const char* text, mmo_graph** out) {
  return guarded([&] {
    need(text, "text");
    emit(out, mmo::parse_graph(text));
  });
}

mmo_status mmo_graph_load(const char* path, mmo_graph** out) {
  return guarded([&] {
    need(path, "path");
    emit(out, mmo::parse_graph(mmo::read_file(path)));
  });
}

mmo_status mmo_graph_create(uint32_t n, const uint32_t* edges, size_t m, mmo_graph** out) {
  return guarded([&] {
    if (m) need(edges, "edges");
    std::vector<mmo::Edge> list;
    for (size_t k = 0; k < m; ++k) list.emplace_back(edges[2 * k], edges[2 * k + 1]);
    emit(out, mmo::Graph(n, std::move(list)));
  });
}

mmo_status mmo_graph_random(uint32_t n, double p, uint64_t seed, mmo_graph** out) {
  return guarded([&] {
    mmo::SeededRng rng(seed);
    emit(out, mmo::gen_random_graph(n, p, rng));
  });
}

void mmo_graph_free(mmo_graph* g) { delete g; }
uint32_t mmo_graph_vertex_count(const mmo_graph* g) { return g ? g->value.vertex_count() : 0; }
size_t mmo_graph_edge_count(const mmo_graph* g) { return g ? g->value.edge_count() : 0; }

mmo_status mmo_graph_serialize(const mmo_graph* g, char** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = dup_string(mmo::serialize(g->value));
  });
}

// ---------------------------------------------------------------- weights

mmo_status mmo_weights_parse(const char* text, mmo_weights** out) {
  return guarded([&] {
    need(text, "text");
    emit(out, mmo::parse_weights(text));
  });
}

mmo_status mmo_weights_load(const char* path, mmo_weights** out) {
  return guarded([&] {
    need(path, "path");
    emit(out, mmo::parse_weights(mmo::read_file(path)));
  });
}

mmo_status mmo_weights_uniform(uint32_t n, size_t T, double W, uint64_t seed, mmo_weights** out) {
  return guarded([&] {
    mmo::SeededRng rng(seed);
    emit(out, mmo::gen_uniform_weights(n, T, W, rng));
  });
}

mmo_status mmo_weights_onehot(uint32_t n, size_t T, uint64_t seed, mmo_weights** out) {
  return guarded([&] {
    mmo::SeededRng rng(seed);
    emit(out, mmo::gen_onehot_weights(n, T, rng));
  });
}

void mmo_weights_free(mmo_weights* w) { delete w; }
uint32_t mmo_weights_width(const mmo_weights* w) { return w ? w->value.width() : 0; }
size_t mmo_weights_length(const mmo_weights* w) { return w ? w->value.length() : 0; }

mmo_status mmo_weights_get(const mmo_weights* w, size_t t, uint32_t i, double* out) {
  return guarded([&] {
    need(w, "weights");
    need(out, "out");
    mmo::require(t < w->value.length() && i < w->value.width(), mmo::ErrorCode::InvalidArgument,
                 "weight index out of range");
    *out = w->value.row(t)[i];
  });
}

mmo_status mmo_weights_serialize(const mmo_weights* w, char** out) {
  return guarded([&] {
    need(w, "weights");
    need(out, "out");
    *out = dup_string(mmo::serialize(w->value));
  });
}

// ---------------------------------------------------------------- gkp

mmo_status mmo_gkp_parse(const char* text, mmo_gkp** out) {
  return guarded([&] {
    need(text, "text");
    emit(out, mmo::parse_gkp(text));
  });
}

mmo_status mmo_gkp_load(const char* path, mmo_gkp** out) {
  return guarded([&] {
    need(path, "path");
    emit(out, mmo::parse_gkp(mmo::read_file(path)));
  });
}

mmo_status mmo_gkp_random(uint32_t n, size_t rounds, double c, uint64_t seed, mmo_gkp** out) {
  return guarded([&] {
    mmo::SeededRng rng(seed);
    emit(out, mmo::gen_random_gkp(n, rounds, c, rng));
  });
}

void mmo_gkp_free(mmo_gkp* k) { delete k; }
uint32_t mmo_gkp_item_count(const mmo_gkp* k) { return k ? k->value.statics.item_count() : 0; }
size_t mmo_gkp_round_count(const mmo_gkp* k) { return k ? k->value.rounds.size() : 0; }

mmo_status mmo_gkp_serialize(const mmo_gkp* k, char** out) {
  return guarded([&] {
    need(k, "gkp");
    need(out, "out");
    *out = dup_string(mmo::serialize(k->value));
  });
}

// ---------------------------------------------------------------- formulas

mmo_status mmo_formula_parse(const char* text, mmo_formula** out) {
  return guarded([&] {
    need(text, "text");
    emit(out, mmo::parse_dnf(text));
  });
}

mmo_status mmo_formula_load(const char* path, mmo_formula** out) {
  return guarded([&] {
    need(path, "path");
    emit(out, mmo::parse_dnf(mmo::read_file(path)));
  });
}

mmo_status mmo_formula_random(uint32_t n, size_t m, uint64_t seed, mmo_formula** out) {
  return guarded([&] {
    mmo::SeededRng rng(seed);
    emit(out, mmo::gen_random_dnf(n, m, rng));
  });
}

void mmo_formula_free(mmo_formula* f) { delete f; }
uint32_t mmo_formula_variable_count(const mmo_formula* f) {
  return f ? f->value.variable_count() : 0;
}
size_t mmo_formula_clause_count(const mmo_formula* f) { return f ? f->value.clause_count() : 0; }

mmo_status mmo_formula_serialize(const mmo_formula* f, char** out) {
  return guarded([&] {
    need(f, "formula");
    need(out, "out");
    *out = dup_string(mmo::serialize(f->value));
  });
}

// ---------------------------------------------------------------- solvers

mmo_status mmo_static_minmax_vc(const mmo_graph* g, const double* w, size_t len, uint32_t* cover,
                                size_t* cover_len, double* cost) {
  return guarded([&] {
    need(g, "graph");
    if (len) need(w, "w");
    const auto sol = mmo::static_minmax_vc(g->value, std::span<const double>(w, len));
    write_set(sol.cover, cover, cover_len);
    if (cost) *cost = sol.cost;
  });
}

mmo_status mmo_best_static_vc_hindsight(const mmo_graph* g, const mmo_weights* seq,
                                        uint32_t* cover, size_t* cover_len, double* cost) {
  return guarded([&] {
    need(g, "graph");
    need(seq, "weights");
    const auto sol = mmo::best_static_vc_hindsight(g->value, seq->value);
    write_set(sol.cover, cover, cover_len);
    if (cost) *cost = sol.cost;
  });
}

mmo_status mmo_project_vc(const mmo_graph* g, const double* y, size_t len, double* x) {
  return guarded([&] {
    need(g, "graph");
    need(x, "x");
    if (len) need(y, "y");
    const auto p = mmo::project_vc_polytope(std::span<const double>(y, len), g->value, {});
    std::copy(p.x.begin(), p.x.end(), x);
  });
}

mmo_status mmo_gkp_brute(const mmo_gkp* k, uint32_t* items, size_t* items_len, double* value) {
  return guarded([&] {
    need(k, "gkp");
    const auto sol = mmo::brute_oracle(k->value.statics, k->value.rounds);
    write_set(sol.items, items, items_len);
    if (value) *value = sol.profit;
  });
}

mmo_status mmo_gkp_fptas(const mmo_gkp* k, double eps, uint32_t* items, size_t* items_len,
                         double* value, size_t* dp_cells, int* certified) {
  return guarded([&] {
    need(k, "gkp");
    const auto sol = mmo::fptas_oracle(k->value.statics, k->value.rounds, eps);
    write_set(sol.items, items, items_len);
    if (value) *value = sol.profit;
    if (dp_cells) *dp_cells = sol.dp_cells;
    if (certified) *certified = sol.certified ? 1 : 0;
  });
}

// ---------------------------------------------------------------- reductions

mmo_status mmo_reduce_dnf_to_matching(const mmo_formula* f, mmo_graph** graph,
                                      mmo_weights** rows) {
  return guarded([&] {
    need(f, "formula");
    need(graph, "graph");
    need(rows, "rows");
    auto gadget = mmo::dnf_to_matching(f->value);
    *graph = new mmo_graph{std::move(gadget.graph)};
    *rows = new mmo_weights{std::move(gadget.weight_rows)};
  });
}

mmo_status mmo_reduce_dnf_to_path(const mmo_formula* f, uint32_t* stages, mmo_weights** rows) {
  return guarded([&] {
    need(f, "formula");
    auto gadget = mmo::dnf_to_path(f->value);
    if (stages) *stages = gadget.chain.stages;
    emit(rows, std::move(gadget.weight_rows));
  });
}

mmo_status mmo_reduce_vc(const mmo_graph* g, mmo_weights** rows) {
  return guarded([&] {
    need(g, "graph");
    emit(rows, mmo::vc_to_multi_vc(g->value));
  });
}

mmo_status mmo_reduce_3color_to_p3(const mmo_graph* g, mmo_weights** jobs) {
  return guarded([&] {
    need(g, "graph");
    emit(jobs, mmo::threecolor_to_p3(g->value));
  });
}

mmo_status mmo_verify_reductions(const mmo_formula* f, const char* formula_id, size_t* violations,
                                 char** report_json) {
  return guarded([&] {
    need(f, "formula");
    const auto report = mmo::validate_correspondence(f->value, formula_id ? formula_id : "");
    if (violations) *violations = report.violations.size();
    if (report_json) *report_json = dup_string(mmo::to_json(report));
  });
}

mmo_status mmo_verify_projection(const mmo_graph* g, size_t samples, size_t comparators,
                                 uint64_t seed, int* pass, char** report_json) {
  return guarded([&] {
    need(g, "graph");
    mmo::SeededRng rng(seed);
    const auto chk = mmo::check_projection(g->value, samples, comparators, rng);
    if (pass) *pass = chk.pass ? 1 : 0;
    if (report_json) {
      const nlohmann::json j{{"samples", chk.samples},
                             {"comparators", comparators},
                             {"max_violation", chk.max_violation},
                             {"max_idempotence_gap", chk.max_idempotence_gap},
                             {"max_optimality_gap", chk.max_optimality_gap},
                             {"pass", chk.pass}};
      *report_json = dup_string(j.dump());
    }
  });
}

mmo_status mmo_bench_oracle(const mmo_gkp* k, const double* eps, size_t eps_len, int* pass,
                            char** csv) {
  return guarded([&] {
    need(k, "gkp");
    if (eps_len) need(eps, "eps");
    const auto& set = k->value;
    const auto inst = mmo::aggregate(set.statics, set.rounds);
    const bool have_brute = set.statics.item_count() <= mmo::kMaxBruteItems;
    const double brute = have_brute ? mmo::brute_oracle(inst).profit : std::nan("");

    std::ostringstream out;
    out << "n,m,eps,brute_value,fptas_value,ratio,dp_cells,elapsed_ms\n";
    bool ok = true;
    for (size_t e = 0; e < eps_len; ++e) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto sol = mmo::fptas_oracle(inst, eps[e]);
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      std::string brute_s, ratio_s;
      if (have_brute) {
        brute_s = mmo::format_real(brute);
        ratio_s = brute > 0.0 ? mmo::format_real(sol.profit / brute) : "";
        if (sol.profit < (1.0 - eps[e]) * brute) ok = false;
      }
      out << set.statics.item_count() << ',' << set.rounds.size() << ','
          << mmo::format_real(eps[e]) << ',' << brute_s << ',' << mmo::format_real(sol.profit)
          << ',' << ratio_s << ',' << sol.dp_cells << ',' << mmo::format_real(ms) << '\n';
    }
    if (pass) *pass = ok ? 1 : 0;
    if (csv) *csv = dup_string(out.str());
  });
}

// ---------------------------------------------------------------- bounds

mmo_status mmo_bound_theorem2(double W, size_t n, size_t T, double* out) {
  return guarded([&] {
    need(out, "out");
    mmo::require(W >= 0.0, mmo::ErrorCode::InvalidArgument, "W must be >= 0");
    *out = mmo::theorem2_bound(W, n, T);
  });
}

mmo_status mmo_bound_theorem3(size_t N, double kappa, double delta, double G_f, double G_gamma,
                              double eps, size_t T, double* out) {
  return guarded([&] {
    need(out, "out");
    mmo::GftplConfig cfg;
    cfg.N = N;
    cfg.kappa = kappa;
    cfg.delta = delta;
    cfg.G_f = G_f;
    cfg.G_gamma = G_gamma;
    cfg.eps = eps;
    cfg.validate();
    *out = mmo::theorem3_bound(cfg, eps, T);
  });
}

mmo_status mmo_epsilon_prime(double eps, size_t T, double F_M, size_t N, double eta,
                             double Gamma_M, double* out) {
  return guarded([&] {
    need(out, "out");
    mmo::GftplConfig cfg;
    cfg.N = N;
    cfg.F_M = F_M;
    cfg.eta = eta;
    cfg.Gamma_M = Gamma_M;
    cfg.eps = eps;
    cfg.validate();
    *out = mmo::epsilon_prime(eps, T, cfg);
  });
}

mmo_status mmo_gap_horizon(double A, double B, double p_coeff, double c_exp, double eps, size_t n,
                           uint64_t* out) {
  return guarded([&] {
    need(out, "out");
    mmo::GapConfig cfg;
    cfg.A = A;
    cfg.B = B;
    cfg.p_coeff = p_coeff;
    cfg.c_exp = c_exp;
    *out = mmo::gap_horizon(cfg, eps, n);
  });
}

// ---------------------------------------------------------------- experiments

mmo_status mmo_run_experiment(const char* config_json, const char* base_dir,
                              const char* output_dir, int* all_pass, char** summary_json) {
  return guarded([&] {
    need(config_json, "config");
    const std::string base = base_dir ? base_dir : "";
    const std::string outdir = output_dir ? output_dir : "";
    bool sweep = false;
    try {
      sweep = nlohmann::json::parse(config_json).contains("horizons");
    } catch (const nlohmann::json::exception& e) {
      mmo::fail(mmo::ErrorCode::Parse, std::string("config: ") + e.what());
    }
    std::string text;
    bool ok = false;
    if (sweep) {
      const auto s = mmo::run_sweep(config_json, base, outdir);
      text = mmo::to_json(s);
      ok = s.all_pass;
    } else {
      const auto ex = mmo::run_experiment(config_json, base, outdir);
      text = mmo::to_json(ex.summary);
      ok = ex.summary.all_pass;
    }
    if (all_pass) *all_pass = ok ? 1 : 0;
    if (summary_json) *summary_json = dup_string(text);
  });
}

} // extern "C"
