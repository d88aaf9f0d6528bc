#ifndef MMO_H
#define MMO_H

/*
 * C interface to the min-max online learning library.
 *
 * Every fallible call returns mmo_status; on failure mmo_last_error() gives a
 * thread-local message valid until the next call on the same thread.
 * Objects are opaque handles released with their *_free function.
 * Strings returned through char** are heap copies released with mmo_string_free.
 * Index arrays written through out-pointers must hold at least the documented
 * capacity (vertex count, item count, ...).
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MMO_API __declspec(dllexport)
#else
#define MMO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mmo_status {
  MMO_OK = 0,
  MMO_ERR_INVALID_ARGUMENT = 1,
  MMO_ERR_PARSE = 2,
  MMO_ERR_DIMENSION_MISMATCH = 3,
  MMO_ERR_TOO_LARGE = 4,
  MMO_ERR_NOT_CONVERGED = 5,
  MMO_ERR_NO_PERFECT_MATCHING = 6,
  MMO_ERR_ODD_VERTEX_COUNT = 7,
  MMO_ERR_IO = 8,
  MMO_ERR_ORACLE_FAILURE = 9,
  MMO_ERR_NON_COVER = 10,
  MMO_ERR_GRID_OVERFLOW = 11,
  MMO_ERR_INTERNAL = 99
} mmo_status;

typedef struct mmo_graph mmo_graph;
typedef struct mmo_weights mmo_weights;
typedef struct mmo_gkp mmo_gkp;
typedef struct mmo_formula mmo_formula;

MMO_API const char* mmo_last_error(void);
MMO_API const char* mmo_status_name(mmo_status status);
MMO_API void mmo_string_free(char* s);

/* ---- graphs: "n m" header then one "u v" edge per line ---- */
MMO_API mmo_status mmo_graph_parse(const char* text, mmo_graph** out);
MMO_API mmo_status mmo_graph_load(const char* path, mmo_graph** out);
/* edges holds m (u, v) pairs flattened */
MMO_API mmo_status mmo_graph_create(uint32_t n, const uint32_t* edges, size_t m, mmo_graph** out);
MMO_API mmo_status mmo_graph_random(uint32_t n, double p, uint64_t seed, mmo_graph** out);
MMO_API void mmo_graph_free(mmo_graph* g);
MMO_API uint32_t mmo_graph_vertex_count(const mmo_graph* g);
MMO_API size_t mmo_graph_edge_count(const mmo_graph* g);
MMO_API mmo_status mmo_graph_serialize(const mmo_graph* g, char** out);

/* ---- weight / processing-time sequences: "n=<width>" then CSV rows ---- */
MMO_API mmo_status mmo_weights_parse(const char* text, mmo_weights** out);
MMO_API mmo_status mmo_weights_load(const char* path, mmo_weights** out);
MMO_API mmo_status mmo_weights_uniform(uint32_t n, size_t T, double W, uint64_t seed,
                                       mmo_weights** out);
MMO_API mmo_status mmo_weights_onehot(uint32_t n, size_t T, uint64_t seed, mmo_weights** out);
MMO_API void mmo_weights_free(mmo_weights* w);
MMO_API uint32_t mmo_weights_width(const mmo_weights* w);
MMO_API size_t mmo_weights_length(const mmo_weights* w);
MMO_API mmo_status mmo_weights_get(const mmo_weights* w, size_t t, uint32_t i, double* out);
MMO_API mmo_status mmo_weights_serialize(const mmo_weights* w, char** out);

/* ---- generalized knapsack instance sets (JSON) ---- */
MMO_API mmo_status mmo_gkp_parse(const char* text, mmo_gkp** out);
MMO_API mmo_status mmo_gkp_load(const char* path, mmo_gkp** out);
MMO_API mmo_status mmo_gkp_random(uint32_t n, size_t rounds, double c, uint64_t seed,
                                  mmo_gkp** out);
MMO_API void mmo_gkp_free(mmo_gkp* k);
MMO_API uint32_t mmo_gkp_item_count(const mmo_gkp* k);
MMO_API size_t mmo_gkp_round_count(const mmo_gkp* k);
MMO_API mmo_status mmo_gkp_serialize(const mmo_gkp* k, char** out);

/* ---- 3-DNF formulas: optional "p dnf n m" header, one clause of three
 * signed 1-based literals per line ---- */
MMO_API mmo_status mmo_formula_parse(const char* text, mmo_formula** out);
MMO_API mmo_status mmo_formula_load(const char* path, mmo_formula** out);
MMO_API mmo_status mmo_formula_random(uint32_t n, size_t m, uint64_t seed, mmo_formula** out);
MMO_API void mmo_formula_free(mmo_formula* f);
MMO_API uint32_t mmo_formula_variable_count(const mmo_formula* f);
MMO_API size_t mmo_formula_clause_count(const mmo_formula* f);
MMO_API mmo_status mmo_formula_serialize(const mmo_formula* f, char** out);

/* ---- solvers; set outputs need capacity n ---- */
MMO_API mmo_status mmo_static_minmax_vc(const mmo_graph* g, const double* w, size_t len,
                                        uint32_t* cover, size_t* cover_len, double* cost);
MMO_API mmo_status mmo_best_static_vc_hindsight(const mmo_graph* g, const mmo_weights* seq,
                                                uint32_t* cover, size_t* cover_len,
                                                double* cost);
/* Euclidean projection onto the vertex cover polytope; x needs capacity n */
MMO_API mmo_status mmo_project_vc(const mmo_graph* g, const double* y, size_t len, double* x);

/* item outputs need capacity item_count */
MMO_API mmo_status mmo_gkp_brute(const mmo_gkp* k, uint32_t* items, size_t* items_len,
                                 double* value);
MMO_API mmo_status mmo_gkp_fptas(const mmo_gkp* k, double eps, uint32_t* items,
                                 size_t* items_len, double* value, size_t* dp_cells,
                                 int* certified);

/* ---- reductions ---- */
MMO_API mmo_status mmo_reduce_dnf_to_matching(const mmo_formula* f, mmo_graph** graph,
                                              mmo_weights** rows);
/* arc 2i is the true arc of stage i, arc 2i+1 the false arc */
MMO_API mmo_status mmo_reduce_dnf_to_path(const mmo_formula* f, uint32_t* stages,
                                          mmo_weights** rows);
MMO_API mmo_status mmo_reduce_vc(const mmo_graph* g, mmo_weights** rows);
MMO_API mmo_status mmo_reduce_3color_to_p3(const mmo_graph* g, mmo_weights** jobs);

/* Exhaustive satisfied = m - cost check on both gadgets. */
MMO_API mmo_status mmo_verify_reductions(const mmo_formula* f, const char* formula_id,
                                         size_t* violations, char** report_json);
/* Random projections against random feasible comparators. */
MMO_API mmo_status mmo_verify_projection(const mmo_graph* g, size_t samples, size_t comparators,
                                         uint64_t seed, int* pass, char** report_json);

/* CSV: n,m,eps,brute_value,fptas_value,ratio,dp_cells,elapsed_ms. pass is 1 iff
 * every row reaches (1 - eps) of the brute value (rows without one are skipped). */
MMO_API mmo_status mmo_bench_oracle(const mmo_gkp* k, const double* eps, size_t eps_len,
                                    int* pass, char** csv);

/* ---- bounds ---- */
MMO_API mmo_status mmo_bound_theorem2(double W, size_t n, size_t T, double* out);
MMO_API mmo_status mmo_bound_theorem3(size_t N, double kappa, double delta, double G_f,
                                      double G_gamma, double eps, size_t T, double* out);
MMO_API mmo_status mmo_epsilon_prime(double eps, size_t T, double F_M, size_t N, double eta,
                                     double Gamma_M, double* out);
MMO_API mmo_status mmo_gap_horizon(double A, double B, double p_coeff, double c_exp, double eps,
                                   size_t n, uint64_t* out);

/* ---- experiments ----
 * Runs a JSON experiment config; a config with "horizons" runs a sweep.
 * base_dir resolves relative paths, output_dir may be NULL for no files. */
MMO_API mmo_status mmo_run_experiment(const char* config_json, const char* base_dir,
                                      const char* output_dir, int* all_pass,
                                      char** summary_json);

#ifdef __cplusplus
}
#endif

#endif /* MMO_H */
