/* Copyright 2026 The cavity2sat Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the cavity2sat library. Every fallible call returns a
 * c2s_status; on failure c2s_last_error() describes the problem for the
 * calling thread. Strings returned through char** are owned by the caller
 * and released with c2s_string_free. Output arrays are caller-allocated
 * with the documented length. Literals use the DIMACS encoding +-(var+1).
 */

#ifndef CAVITY2SAT_H
#define CAVITY2SAT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define C2S_API __declspec(dllexport)
#else
#define C2S_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum c2s_status {
  C2S_OK = 0,
  C2S_INVALID_ARGUMENT = 1,
  C2S_PARSE_ERROR = 2,
  C2S_COMPONENT_TOO_LARGE = 3,
  C2S_OUT_OF_REGIME = 4,
  C2S_UNSATISFIABLE = 5,
  C2S_INFEASIBLE_BOUNDARY = 6,
  C2S_TREE_TOO_LARGE = 7,
  C2S_IO_ERROR = 8,
  C2S_INTERNAL = 9
} c2s_status;

typedef struct c2s_formula c2s_formula;
typedef struct c2s_population c2s_population;
typedef struct c2s_tree c2s_tree;

C2S_API const char* c2s_version(void);
C2S_API const char* c2s_rng_algorithm(void);
C2S_API const char* c2s_last_error(void);
C2S_API const char* c2s_status_name(c2s_status status);
C2S_API void c2s_string_free(char* s);

/* 0 restores the default (CAVITY2SAT_THREADS, else hardware threads). */
C2S_API void c2s_set_threads(unsigned threads);
C2S_API unsigned c2s_get_threads(void);

/* Formulas. */
C2S_API c2s_status c2s_formula_sample(uint32_t n, double d, uint64_t seed,
                                      c2s_formula** out);
/* `literals` holds 2 * num_clauses DIMACS literals. */
C2S_API c2s_status c2s_formula_create(uint32_t n, size_t num_clauses,
                                      const int64_t* literals, c2s_formula** out);
C2S_API c2s_status c2s_formula_parse_dimacs(const char* text, c2s_formula** out);
C2S_API c2s_status c2s_formula_from_json(const char* text, c2s_formula** out);
C2S_API c2s_status c2s_formula_to_dimacs(const c2s_formula* f, char** out);
C2S_API c2s_status c2s_formula_to_json(const c2s_formula* f, char** out);
C2S_API void c2s_formula_free(c2s_formula* f);
C2S_API uint32_t c2s_formula_num_vars(const c2s_formula* f);
C2S_API size_t c2s_formula_num_clauses(const c2s_formula* f);
C2S_API c2s_status c2s_formula_clause(const c2s_formula* f, size_t index,
                                      int64_t* first, int64_t* second);
C2S_API c2s_status c2s_coupled_sample(uint32_t n, double d, uint64_t seed,
                                      c2s_formula** base, c2s_formula** grown,
                                      c2s_formula** extended);

/* Exact counting; `cap` bounds the component size (0 selects the default). */
C2S_API c2s_status c2s_count(const c2s_formula* f, uint32_t cap, char** z_decimal,
                             double* log_z);
/* `chi` has num_vars entries in {-1, 0, +1}. */
C2S_API c2s_status c2s_count_conditional(const c2s_formula* f, const int8_t* chi,
                                         uint32_t cap, char** z_decimal, double* log_z);
/* `out` receives num_vars probabilities of +1. */
C2S_API c2s_status c2s_marginals_exact(const c2s_formula* f, uint32_t cap, double* out);
C2S_API c2s_status c2s_soft_partition(const c2s_formula* f, double beta, uint32_t cap,
                                      double* log_z);

/* Belief propagation. Message arrays have 2 * num_clauses entries indexed
 * by edge 2a + slot and may be NULL. */
C2S_API unsigned c2s_bp_default_rounds(uint32_t n);
C2S_API c2s_status c2s_bp_run(const c2s_formula* f, unsigned rounds, double* marginals,
                              double* clause_to_var, double* var_to_clause);

/* Density evolution. */
C2S_API c2s_status c2s_de_init(size_t n, c2s_population** out);
C2S_API c2s_status c2s_population_from_eta(const double* eta, size_t n,
                                           unsigned generation, c2s_population** out);
/* One LL_d step (plus = 0) or LL+_d step (plus != 0), in place. */
C2S_API c2s_status c2s_de_step(c2s_population* p, double d, uint64_t seed, int plus);
/* `w2_trace` receives `iterations` values and may be NULL. */
C2S_API c2s_status c2s_de_run(double d, unsigned iterations, size_t n, uint64_t seed,
                              c2s_population** out, double* w2_trace);
C2S_API void c2s_population_free(c2s_population* p);
C2S_API size_t c2s_population_size(const c2s_population* p);
C2S_API unsigned c2s_population_generation(const c2s_population* p);
C2S_API c2s_status c2s_population_eta(const c2s_population* p, double* out);
C2S_API c2s_status c2s_population_mu(const c2s_population* p, double* out);
C2S_API c2s_status c2s_wasserstein(const double* a, size_t na, const double* b, size_t nb,
                                   int q, double* out);
/* `x` and `f` receive resolution + 1 values. */
C2S_API c2s_status c2s_cdf_export(const double* mu, size_t n, unsigned resolution,
                                  double* x, double* f);

typedef struct c2s_contraction_result {
  double rate;       /* geometric mean of recorded ratios */
  double max_ratio;
  size_t recorded;
} c2s_contraction_result;

C2S_API c2s_status c2s_contraction(double d, size_t n, unsigned iterations, uint64_t seed,
                                   c2s_contraction_result* out);

/* Bethe functionals. beta = +inf tags the hard model. */
typedef struct c2s_estimate {
  double value;
  double std_error;
  uint64_t samples;
  double d;
  double beta;
} c2s_estimate;

C2S_API c2s_status c2s_bethe(const c2s_population* p, double d, uint64_t samples,
                             uint64_t seed, double lambda_eps, c2s_estimate* out);
C2S_API c2s_status c2s_soft_bethe(const c2s_population* p, double d, double beta,
                                  uint64_t samples, uint64_t seed, c2s_estimate* out);
C2S_API double c2s_first_moment_bound(double d);

typedef struct c2s_curve_point {
  double d;
  double bethe;
  double bound;
  double std_error;
} c2s_curve_point;

/* `out` receives `count` points. */
C2S_API c2s_status c2s_curve(const double* grid, size_t count, unsigned iterations,
                             size_t population, uint64_t samples, uint64_t seed,
                             c2s_curve_point* out);

typedef struct c2s_stat {
  double mean;
  double std_error;
  uint64_t count;
} c2s_stat;

typedef struct c2s_ass_result {
  c2s_stat delta1;
  c2s_stat delta2;
  c2s_stat difference;
  uint64_t trials;
  uint64_t skipped;
} c2s_ass_result;

C2S_API c2s_status c2s_ass(uint32_t n, double d, uint64_t trials, uint32_t cap,
                           uint64_t seed, c2s_ass_result* out);

/* Galton-Watson trees. */
C2S_API c2s_status c2s_tree_sample(double d, unsigned depth, uint64_t seed,
                                   size_t max_nodes, c2s_tree** out);
C2S_API void c2s_tree_free(c2s_tree* t);
C2S_API uint32_t c2s_tree_num_vars(const c2s_tree* t);
C2S_API size_t c2s_tree_boundary_size(const c2s_tree* t);
C2S_API c2s_status c2s_tree_to_formula(const c2s_tree* t, c2s_formula** out);

typedef struct c2s_tree_row {
  uint64_t trial;
  unsigned level;
  double unconditional;
  double sigma_plus;
  double sigma_minus;
  double eta_root;
} c2s_tree_row;

/* `out` receives trials * depth rows ordered by (trial, level). */
C2S_API c2s_status c2s_tree_experiment(double d, unsigned depth, uint64_t trials,
                                       uint64_t seed, c2s_tree_row* out);

/* Unit clause propagation. `chi` and `imposed` have num_vars entries;
 * `imposed` may be NULL. */
typedef struct c2s_ucp_result {
  uint32_t i_chi;
  uint32_t a_chi;
  int contradiction;
} c2s_ucp_result;

C2S_API c2s_status c2s_ucp(const c2s_formula* f, const int8_t* chi, c2s_ucp_result* out,
                           int8_t* imposed);
C2S_API c2s_status c2s_fact_check(const c2s_formula* f, const int8_t* chi, uint32_t cap,
                                  int* holds, char** z, char** z_chi, uint32_t* i_chi);
/* Parses "1=-1,3=+1" into `out` (num_vars entries). */
C2S_API c2s_status c2s_parse_impose(const char* text, uint32_t n, int8_t* out);

#ifdef __cplusplus
}
#endif

#endif /* CAVITY2SAT_H */
