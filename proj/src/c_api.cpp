// Copyright 2026 The cavity2sat Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cavity2sat/cavity2sat.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <string>
#include <utility>

#include "cavity2sat/bethe.hpp"
#include "cavity2sat/bp.hpp"
#include "cavity2sat/density_evolution.hpp"
#include "cavity2sat/error.hpp"
#include "cavity2sat/exact_count.hpp"
#include "cavity2sat/formula.hpp"
#include "cavity2sat/gw_tree.hpp"
#include "cavity2sat/parallel.hpp"
#include "cavity2sat/rng.hpp"
#include "cavity2sat/ucp.hpp"

struct c2s_formula {
  cavity2sat::Formula f;
};

struct c2s_population {
  cavity2sat::Population p;
};

struct c2s_tree {
  cavity2sat::GWTree t;
};

namespace {

namespace c2s = cavity2sat;

thread_local std::string g_last_error;

template <typename Body>
c2s_status guarded(Body&& body) {
  try {
    body();
    g_last_error.clear();
    return C2S_OK;
  } catch (const c2s::Error& e) {
    g_last_error = e.what();
    return static_cast<c2s_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return C2S_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return C2S_INTERNAL;
  }
}

template <typename T>
const T& require(const T* p, const char* what) {
  if (p == nullptr) throw c2s::InvalidArgument(std::string(what) + " is NULL");
  return *p;
}

template <typename T>
T& require(T* p, const char* what) {
  if (p == nullptr) throw c2s::InvalidArgument(std::string(what) + " is NULL");
  return *p;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::uint32_t resolve_cap(std::uint32_t cap) { return cap == 0 ? c2s::kDefaultCap : cap; }

c2s::PartialAssignment to_assignment(const c2s::Formula& f, const int8_t* chi) {
  require(chi, "chi");
  return c2s::PartialAssignment(chi, chi + f.num_vars());
}

void write_count(const c2s::CountResult& r, char** z_decimal, double* log_z) {
  if (log_z != nullptr) *log_z = r.log_z;
  if (z_decimal != nullptr) *z_decimal = copy_string(r.z_decimal());
}

c2s::Literal literal_from_dimacs(std::int64_t lit, std::uint32_t n) {
  if (lit == 0) throw c2s::InvalidArgument("literal 0 is not allowed");
  const std::int64_t var = lit > 0 ? lit : -lit;
  if (var > static_cast<std::int64_t>(n)) {
    throw c2s::InvalidArgument("literal " + std::to_string(lit) + " out of range");
  }
  return c2s::Literal{static_cast<c2s::VarId>(var - 1), static_cast<std::int8_t>(lit > 0 ? 1 : -1)};
}

c2s_stat to_stat(const c2s::RunningStats& s) {
  return c2s_stat{s.mean, s.std_error(), static_cast<uint64_t>(s.count)};
}

}  // namespace

extern "C" {

const char* c2s_version(void) { return "0.1.0"; }

const char* c2s_rng_algorithm(void) { return c2s::kRngAlgorithm.data(); }

const char* c2s_last_error(void) { return g_last_error.c_str(); }

const char* c2s_status_name(c2s_status status) {
  switch (status) {
    case C2S_OK: return "OK";
    case C2S_INVALID_ARGUMENT: return "InvalidArgument";
    case C2S_PARSE_ERROR: return "ParseError";
    case C2S_COMPONENT_TOO_LARGE: return "ComponentTooLarge";
    case C2S_OUT_OF_REGIME: return "OutOfRegime";
    case C2S_UNSATISFIABLE: return "Unsatisfiable";
    case C2S_INFEASIBLE_BOUNDARY: return "InfeasibleBoundary";
    case C2S_TREE_TOO_LARGE: return "TreeTooLarge";
    case C2S_IO_ERROR: return "IoError";
    case C2S_INTERNAL: return "Internal";
  }
  return "Unknown";
}

void c2s_string_free(char* s) { delete[] s; }

void c2s_set_threads(unsigned threads) { c2s::set_thread_count(threads); }

unsigned c2s_get_threads(void) { return c2s::thread_count(); }

c2s_status c2s_formula_sample(uint32_t n, double d, uint64_t seed, c2s_formula** out) {
  return guarded([&] {
    require(out, "out") = new c2s_formula{c2s::sample_formula(n, d, seed)};
  });
}

c2s_status c2s_formula_create(uint32_t n, size_t num_clauses, const int64_t* literals,
                              c2s_formula** out) {
  return guarded([&] {
    require(out, "out");
    if (num_clauses > 0) require(literals, "literals");
    std::vector<c2s::Clause> clauses;
    clauses.reserve(num_clauses);
    for (size_t a = 0; a < num_clauses; ++a) {
      clauses.push_back(c2s::Clause{literal_from_dimacs(literals[2 * a], n),
                                    literal_from_dimacs(literals[2 * a + 1], n)});
    }
    *out = new c2s_formula{c2s::Formula(n, std::move(clauses))};
  });
}

c2s_status c2s_formula_parse_dimacs(const char* text, c2s_formula** out) {
  return guarded([&] {
    require(out, "out") = new c2s_formula{c2s::parse_dimacs(&require(text, "text"))};
  });
}

c2s_status c2s_formula_from_json(const char* text, c2s_formula** out) {
  return guarded([&] {
    require(out, "out") = new c2s_formula{c2s::formula_from_json(&require(text, "text"))};
  });
}

c2s_status c2s_formula_to_dimacs(const c2s_formula* f, char** out) {
  return guarded([&] {
    require(out, "out") = copy_string(c2s::emit_dimacs(require(f, "formula").f));
  });
}

c2s_status c2s_formula_to_json(const c2s_formula* f, char** out) {
  return guarded([&] {
    require(out, "out") = copy_string(c2s::formula_to_json(require(f, "formula").f));
  });
}

void c2s_formula_free(c2s_formula* f) { delete f; }

uint32_t c2s_formula_num_vars(const c2s_formula* f) { return f ? f->f.num_vars() : 0; }

size_t c2s_formula_num_clauses(const c2s_formula* f) { return f ? f->f.num_clauses() : 0; }

c2s_status c2s_formula_clause(const c2s_formula* f, size_t index, int64_t* first,
                              int64_t* second) {
  return guarded([&] {
    const c2s::Formula& formula = require(f, "formula").f;
    if (index >= formula.num_clauses()) throw c2s::InvalidArgument("clause index out of range");
    const c2s::Clause& c = formula.clause(static_cast<c2s::ClauseId>(index));
    require(first, "first") = c.first.dimacs();
    require(second, "second") = c.second.dimacs();
  });
}

c2s_status c2s_coupled_sample(uint32_t n, double d, uint64_t seed, c2s_formula** base,
                              c2s_formula** grown, c2s_formula** extended) {
  return guarded([&] {
    require(base, "base");
    require(grown, "grown");
    require(extended, "extended");
    c2s::CoupledTriple t = c2s::sample_coupled(n, d, seed);
    *base = new c2s_formula{std::move(t.base)};
    *grown = new c2s_formula{std::move(t.grown)};
    *extended = new c2s_formula{std::move(t.extended)};
  });
}

c2s_status c2s_count(const c2s_formula* f, uint32_t cap, char** z_decimal, double* log_z) {
  return guarded([&] {
    write_count(c2s::count_exact(require(f, "formula").f, resolve_cap(cap)), z_decimal,
                log_z);
  });
}

c2s_status c2s_count_conditional(const c2s_formula* f, const int8_t* chi, uint32_t cap,
                                 char** z_decimal, double* log_z) {
  return guarded([&] {
    const c2s::Formula& formula = require(f, "formula").f;
    write_count(c2s::count_conditional(formula, to_assignment(formula, chi), resolve_cap(cap)),
                z_decimal, log_z);
  });
}

c2s_status c2s_marginals_exact(const c2s_formula* f, uint32_t cap, double* out) {
  return guarded([&] {
    const std::vector<double> m =
        c2s::marginals_exact(require(f, "formula").f, resolve_cap(cap));
    if (!m.empty()) std::copy(m.begin(), m.end(), &require(out, "out"));
  });
}

c2s_status c2s_soft_partition(const c2s_formula* f, double beta, uint32_t cap,
                              double* log_z) {
  return guarded([&] {
    require(log_z, "log_z") =
        c2s::soft_partition(require(f, "formula").f, beta, resolve_cap(cap));
  });
}

unsigned c2s_bp_default_rounds(uint32_t n) { return c2s::default_bp_rounds(n); }

c2s_status c2s_bp_run(const c2s_formula* f, unsigned rounds, double* marginals,
                      double* clause_to_var, double* var_to_clause) {
  return guarded([&] {
    const c2s::BpRun run = c2s::bp_run(require(f, "formula").f, rounds);
    if (marginals != nullptr) {
      std::copy(run.marginals.marginal.begin(), run.marginals.marginal.end(), marginals);
    }
    if (clause_to_var != nullptr) {
      std::copy(run.messages.clause_to_var.begin(), run.messages.clause_to_var.end(),
                clause_to_var);
    }
    if (var_to_clause != nullptr) {
      std::copy(run.messages.var_to_clause.begin(), run.messages.var_to_clause.end(),
                var_to_clause);
    }
  });
}

c2s_status c2s_de_init(size_t n, c2s_population** out) {
  return guarded([&] { require(out, "out") = new c2s_population{c2s::de_init(n)}; });
}

c2s_status c2s_population_from_eta(const double* eta, size_t n, unsigned generation,
                                   c2s_population** out) {
  return guarded([&] {
    require(out, "out");
    if (n == 0) throw c2s::InvalidArgument("population size must be positive");
    require(eta, "eta");
    *out = new c2s_population{c2s::Population{std::vector<double>(eta, eta + n), generation}};
  });
}

c2s_status c2s_de_step(c2s_population* p, double d, uint64_t seed, int plus) {
  return guarded([&] {
    c2s::Population& pop = require(p, "population").p;
    pop = plus ? c2s::de_step_plus(pop, d, seed) : c2s::de_step(pop, d, seed);
  });
}

c2s_status c2s_de_run(double d, unsigned iterations, size_t n, uint64_t seed,
                      c2s_population** out, double* w2_trace) {
  return guarded([&] {
    require(out, "out");
    c2s::DeRun run = c2s::de_run(d, iterations, n, seed);
    if (w2_trace != nullptr) std::copy(run.w2_trace.begin(), run.w2_trace.end(), w2_trace);
    *out = new c2s_population{std::move(run.eta)};
  });
}

void c2s_population_free(c2s_population* p) { delete p; }

size_t c2s_population_size(const c2s_population* p) { return p ? p->p.size() : 0; }

unsigned c2s_population_generation(const c2s_population* p) {
  return p ? p->p.generation : 0;
}

c2s_status c2s_population_eta(const c2s_population* p, double* out) {
  return guarded([&] {
    const c2s::Population& pop = require(p, "population").p;
    std::copy(pop.eta.begin(), pop.eta.end(), &require(out, "out"));
  });
}

c2s_status c2s_population_mu(const c2s_population* p, double* out) {
  return guarded([&] {
    const std::vector<double> mu = c2s::mu_image(require(p, "population").p);
    std::copy(mu.begin(), mu.end(), &require(out, "out"));
  });
}

c2s_status c2s_wasserstein(const double* a, size_t na, const double* b, size_t nb, int q,
                           double* out) {
  return guarded([&] {
    if (na > 0) require(a, "a");
    if (nb > 0) require(b, "b");
    require(out, "out") = c2s::wasserstein({a, na}, {b, nb}, q);
  });
}

c2s_status c2s_cdf_export(const double* mu, size_t n, unsigned resolution, double* x,
                          double* f) {
  return guarded([&] {
    if (n > 0) require(mu, "mu");
    require(x, "x");
    require(f, "f");
    const std::vector<c2s::CdfPoint> points = c2s::cdf_export({mu, n}, resolution);
    for (size_t i = 0; i < points.size(); ++i) {
      x[i] = points[i].x;
      f[i] = points[i].f;
    }
  });
}

c2s_status c2s_contraction(double d, size_t n, unsigned iterations, uint64_t seed,
                           c2s_contraction_result* out) {
  return guarded([&] {
    require(out, "out");
    const c2s::ContractionTrace trace = c2s::coupled_contraction(d, n, iterations, seed);
    out->rate = trace.rate;
    out->max_ratio = trace.ratio.empty()
                         ? 0.0
                         : *std::max_element(trace.ratio.begin(), trace.ratio.end());
    out->recorded = trace.ratio.size();
  });
}

c2s_status c2s_bethe(const c2s_population* p, double d, uint64_t samples, uint64_t seed,
                     double lambda_eps, c2s_estimate* out) {
  return guarded([&] {
    require(out, "out");
    const c2s::BetheEstimate e =
        c2s::bethe_free_entropy(require(p, "population").p, d, samples, seed, lambda_eps);
    *out = c2s_estimate{e.value, e.std_error, e.samples, e.d, e.beta};
  });
}

c2s_status c2s_soft_bethe(const c2s_population* p, double d, double beta, uint64_t samples,
                          uint64_t seed, c2s_estimate* out) {
  return guarded([&] {
    require(out, "out");
    const c2s::BetheEstimate e =
        c2s::soft_bethe(require(p, "population").p, d, beta, samples, seed);
    *out = c2s_estimate{e.value, e.std_error, e.samples, e.d, e.beta};
  });
}

double c2s_first_moment_bound(double d) {
  return d >= 0.0 ? c2s::first_moment_bound(d) : 0.0;
}

c2s_status c2s_curve(const double* grid, size_t count, unsigned iterations, size_t population,
                     uint64_t samples, uint64_t seed, c2s_curve_point* out) {
  return guarded([&] {
    if (count == 0) return;
    require(grid, "grid");
    require(out, "out");
    const std::vector<c2s::CurvePoint> points =
        c2s::curve(std::vector<double>(grid, grid + count), iterations, population, samples,
                   seed);
    for (size_t i = 0; i < points.size(); ++i) {
      out[i] = c2s_curve_point{points[i].d, points[i].bethe, points[i].bound,
                               points[i].std_error};
    }
  });
}

c2s_status c2s_ass(uint32_t n, double d, uint64_t trials, uint32_t cap, uint64_t seed,
                   c2s_ass_result* out) {
  return guarded([&] {
    require(out, "out");
    const c2s::AssResult r = c2s::ass_difference(n, d, trials, resolve_cap(cap), seed);
    *out = c2s_ass_result{to_stat(r.delta1), to_stat(r.delta2), to_stat(r.difference),
                          r.trials, r.skipped};
  });
}

c2s_status c2s_tree_sample(double d, unsigned depth, uint64_t seed, size_t max_nodes,
                           c2s_tree** out) {
  return guarded([&] {
    require(out, "out") = new c2s_tree{
        c2s::sample_tree(d, depth, seed, max_nodes == 0 ? c2s::kMaxTreeNodes : max_nodes)};
  });
}

void c2s_tree_free(c2s_tree* t) { delete t; }

uint32_t c2s_tree_num_vars(const c2s_tree* t) { return t ? t->t.num_vars() : 0; }

size_t c2s_tree_boundary_size(const c2s_tree* t) { return t ? t->t.boundary().size() : 0; }

c2s_status c2s_tree_to_formula(const c2s_tree* t, c2s_formula** out) {
  return guarded([&] {
    require(out, "out") = new c2s_formula{require(t, "tree").t.to_formula()};
  });
}

c2s_status c2s_tree_experiment(double d, unsigned depth, uint64_t trials, uint64_t seed,
                               c2s_tree_row* out) {
  return guarded([&] {
    const std::vector<c2s::TreeRow> rows = c2s::tree_experiment(d, depth, trials, seed);
    if (rows.empty()) return;
    require(out, "out");
    for (size_t i = 0; i < rows.size(); ++i) {
      out[i] = c2s_tree_row{rows[i].trial, rows[i].level, rows[i].unconditional,
                            rows[i].sigma_plus, rows[i].sigma_minus, rows[i].eta_root};
    }
  });
}

c2s_status c2s_ucp(const c2s_formula* f, const int8_t* chi, c2s_ucp_result* out,
                   int8_t* imposed) {
  return guarded([&] {
    const c2s::Formula& formula = require(f, "formula").f;
    require(out, "out");
    const c2s::PartialAssignment assignment = to_assignment(formula, chi);
    const c2s::UcpResult r = c2s::unit_clause_propagate(formula, assignment);
    out->i_chi = r.i_chi;
    out->a_chi = c2s::a_chi(formula, assignment);
    out->contradiction = r.contradiction ? 1 : 0;
    if (imposed != nullptr) std::copy(r.imposed.begin(), r.imposed.end(), imposed);
  });
}

c2s_status c2s_fact_check(const c2s_formula* f, const int8_t* chi, uint32_t cap, int* holds,
                          char** z, char** z_chi, uint32_t* i_chi) {
  return guarded([&] {
    const c2s::Formula& formula = require(f, "formula").f;
    const c2s::FactCheck r =
        c2s::check_fact_uc(formula, to_assignment(formula, chi), resolve_cap(cap));
    if (holds != nullptr) *holds = r.holds ? 1 : 0;
    if (i_chi != nullptr) *i_chi = r.i_chi;
    if (z != nullptr) *z = copy_string(r.z.str());
    if (z_chi != nullptr) *z_chi = copy_string(r.z_chi.str());
  });
}

c2s_status c2s_parse_impose(const char* text, uint32_t n, int8_t* out) {
  return guarded([&] {
    const c2s::PartialAssignment chi = c2s::parse_impose(&require(text, "text"), n);
    if (n > 0) std::copy(chi.begin(), chi.end(), &require(out, "out"));
  });
}

}  // extern "C"
