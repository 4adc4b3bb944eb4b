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

// Exercises the shared library through the C header only.

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "cavity2sat/cavity2sat.h"

extern "C" int c2s_header_is_c(void);

namespace {

struct Formula {
  c2s_formula* f = nullptr;
  ~Formula() { c2s_formula_free(f); }
};

struct Population {
  c2s_population* p = nullptr;
  ~Population() { c2s_population_free(p); }
};

std::string take(char* s) {
  std::string out(s);
  c2s_string_free(s);
  return out;
}

TEST(CApi, HeaderCompilesAsC) { EXPECT_EQ(c2s_header_is_c(), 1); }

TEST(CApi, Metadata) {
  EXPECT_STREQ(c2s_rng_algorithm(), "philox4x32-10/splitmix64-streams/v1");
  EXPECT_GT(std::strlen(c2s_version()), 0u);
  EXPECT_STREQ(c2s_status_name(C2S_OUT_OF_REGIME), "OutOfRegime");
  EXPECT_STREQ(c2s_status_name(C2S_PARSE_ERROR), "ParseError");
  c2s_set_threads(3);
  EXPECT_EQ(c2s_get_threads(), 3u);
  c2s_set_threads(0);
  EXPECT_GE(c2s_get_threads(), 1u);
}

TEST(CApi, FormulaLifecycle) {
  const int64_t lits[] = {1, 2, -2, 3};
  Formula f;
  ASSERT_EQ(c2s_formula_create(3, 2, lits, &f.f), C2S_OK);
  EXPECT_EQ(c2s_formula_num_vars(f.f), 3u);
  EXPECT_EQ(c2s_formula_num_clauses(f.f), 2u);
  int64_t a = 0, b = 0;
  ASSERT_EQ(c2s_formula_clause(f.f, 1, &a, &b), C2S_OK);
  EXPECT_EQ(a, -2);
  EXPECT_EQ(b, 3);
  EXPECT_EQ(c2s_formula_clause(f.f, 2, &a, &b), C2S_INVALID_ARGUMENT);

  char* text = nullptr;
  ASSERT_EQ(c2s_formula_to_dimacs(f.f, &text), C2S_OK);
  const std::string dimacs = take(text);
  EXPECT_EQ(dimacs, "p cnf 3 2\n1 2 0\n-2 3 0\n");
  Formula g;
  ASSERT_EQ(c2s_formula_parse_dimacs(dimacs.c_str(), &g.f), C2S_OK);
  ASSERT_EQ(c2s_formula_to_json(g.f, &text), C2S_OK);
  const std::string js = take(text);
  Formula h;
  ASSERT_EQ(c2s_formula_from_json(js.c_str(), &h.f), C2S_OK);
  ASSERT_EQ(c2s_formula_to_dimacs(h.f, &text), C2S_OK);
  EXPECT_EQ(take(text), dimacs);
}

TEST(CApi, ErrorsAreReported) {
  Formula f;
  const int64_t bad[] = {1, 5};
  EXPECT_EQ(c2s_formula_create(3, 1, bad, &f.f), C2S_INVALID_ARGUMENT);
  EXPECT_EQ(f.f, nullptr);
  EXPECT_NE(std::string(c2s_last_error()).find("out of range"), std::string::npos);
  EXPECT_EQ(c2s_formula_parse_dimacs("p cnf 2 1\n1 9 0\n", &f.f), C2S_PARSE_ERROR);
  EXPECT_NE(std::string(c2s_last_error()).find("line 2"), std::string::npos);
  EXPECT_EQ(c2s_formula_sample(10, 1.0, 1, nullptr), C2S_INVALID_ARGUMENT);
  EXPECT_EQ(c2s_formula_sample(10, -1.0, 1, &f.f), C2S_INVALID_ARGUMENT);

  ASSERT_EQ(c2s_formula_sample(300, 1.9, 1, &f.f), C2S_OK);
  char* z = nullptr;
  double log_z = 0;
  EXPECT_EQ(c2s_count(f.f, 6, &z, &log_z), C2S_COMPONENT_TOO_LARGE);
  EXPECT_EQ(z, nullptr);

  Population p;
  EXPECT_EQ(c2s_de_run(2.5, 3, 100, 1, &p.p, nullptr), C2S_OUT_OF_REGIME);
  EXPECT_STREQ(c2s_last_error(), "OutOfRegime: d must be < 2");

  ASSERT_EQ(c2s_formula_sample(5, 0.0, 1, &f.f), C2S_OK);
  EXPECT_STREQ(c2s_last_error(), "");
}

TEST(CApi, Counting) {
  const int64_t contradiction[] = {1, 2, 1, -2, -1, 2, -1, -2};
  Formula f;
  ASSERT_EQ(c2s_formula_create(2, 4, contradiction, &f.f), C2S_OK);
  char* z = nullptr;
  double log_z = -1;
  ASSERT_EQ(c2s_count(f.f, 0, &z, &log_z), C2S_OK);
  EXPECT_EQ(take(z), "0");
  EXPECT_EQ(log_z, 0.0);
  std::vector<double> marg(2);
  EXPECT_EQ(c2s_marginals_exact(f.f, 0, marg.data()), C2S_UNSATISFIABLE);

  const int64_t one[] = {1, 2};
  Formula g;
  ASSERT_EQ(c2s_formula_create(3, 1, one, &g.f), C2S_OK);
  ASSERT_EQ(c2s_count(g.f, 0, &z, &log_z), C2S_OK);
  EXPECT_EQ(take(z), "6");
  EXPECT_NEAR(log_z, std::log(6.0), 1e-14);
  const int8_t chi[] = {-1, 0, 0};
  ASSERT_EQ(c2s_count_conditional(g.f, chi, 0, &z, nullptr), C2S_OK);
  EXPECT_EQ(take(z), "2");
  ASSERT_EQ(c2s_marginals_exact(g.f, 0, marg.data()), C2S_OK);
  EXPECT_NEAR(marg[0], 2.0 / 3.0, 1e-14);
  double soft = 0;
  ASSERT_EQ(c2s_soft_partition(g.f, 1.5, 0, &soft), C2S_OK);
  EXPECT_NEAR(soft, std::log(2 * (3 + std::exp(-1.5))), 1e-12);
}

TEST(CApi, BeliefPropagation) {
  const int64_t one[] = {1, 2};
  Formula f;
  ASSERT_EQ(c2s_formula_create(2, 1, one, &f.f), C2S_OK);
  std::vector<double> marg(2), c2v(2), v2c(2);
  ASSERT_EQ(c2s_bp_run(f.f, 4, marg.data(), c2v.data(), v2c.data()), C2S_OK);
  EXPECT_NEAR(marg[0], 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(marg[1], 2.0 / 3.0, 1e-14);
  EXPECT_EQ(c2s_bp_run(f.f, 4, nullptr, nullptr, nullptr), C2S_OK);
  EXPECT_GE(c2s_bp_default_rounds(1000), 10u);
}

TEST(CApi, DensityEvolution) {
  Population p;
  std::vector<double> trace(6);
  ASSERT_EQ(c2s_de_run(1.3, 6, 5000, 2, &p.p, trace.data()), C2S_OK);
  EXPECT_EQ(c2s_population_size(p.p), 5000u);
  EXPECT_EQ(c2s_population_generation(p.p), 6u);
  EXPECT_NEAR(trace[0], 0.0, 2.0);
  std::vector<double> eta(5000), mu(5000);
  ASSERT_EQ(c2s_population_eta(p.p, eta.data()), C2S_OK);
  ASSERT_EQ(c2s_population_mu(p.p, mu.data()), C2S_OK);
  for (std::size_t i = 0; i < eta.size(); i += 97) {
    EXPECT_NEAR(mu[i], 1 / (1 + std::exp(-eta[i])), 1e-12);
  }
  ASSERT_EQ(c2s_de_step(p.p, 1.3, 2, 0), C2S_OK);
  EXPECT_EQ(c2s_population_generation(p.p), 7u);

  Population q;
  ASSERT_EQ(c2s_population_from_eta(eta.data(), eta.size(), 6, &q.p), C2S_OK);
  ASSERT_EQ(c2s_de_step(q.p, 1.3, 2, 0), C2S_OK);
  std::vector<double> a(5000), b(5000);
  ASSERT_EQ(c2s_population_eta(p.p, a.data()), C2S_OK);
  ASSERT_EQ(c2s_population_eta(q.p, b.data()), C2S_OK);
  EXPECT_EQ(a, b);

  double w = -1;
  ASSERT_EQ(c2s_wasserstein(a.data(), a.size(), a.data(), a.size(), 2, &w), C2S_OK);
  EXPECT_EQ(w, 0.0);
  EXPECT_EQ(c2s_wasserstein(a.data(), a.size(), b.data(), b.size(), 3, &w), C2S_INVALID_ARGUMENT);

  std::vector<double> x(11), fx(11);
  ASSERT_EQ(c2s_cdf_export(mu.data(), mu.size(), 10, x.data(), fx.data()), C2S_OK);
  EXPECT_EQ(x[10], 1.0);
  EXPECT_EQ(fx[10], 1.0);
  for (int i = 1; i <= 10; ++i) EXPECT_LE(fx[i - 1], fx[i]);

  Population plus;
  ASSERT_EQ(c2s_de_init(100, &plus.p), C2S_OK);
  ASSERT_EQ(c2s_de_step(plus.p, 1.0, 3, 1), C2S_OK);
  std::vector<double> e(100);
  ASSERT_EQ(c2s_population_eta(plus.p, e.data()), C2S_OK);
  for (double v : e) {
    const double k = v / std::log(2.0);
    EXPECT_NEAR(k, std::round(k), 1e-9);
  }

  c2s_contraction_result r{};
  ASSERT_EQ(c2s_contraction(1.5, 50000, 16, 4, &r), C2S_OK);
  EXPECT_GT(r.recorded, 0u);
  EXPECT_LT(r.rate, 1.0);
}

TEST(CApi, Bethe) {
  Population p;
  ASSERT_EQ(c2s_de_run(1.2, 12, 20000, 1, &p.p, nullptr), C2S_OK);
  c2s_estimate hard{}, soft{};
  ASSERT_EQ(c2s_bethe(p.p, 1.2, 200000, 1, 0.0, &hard), C2S_OK);
  EXPECT_NEAR(hard.value, 0.515, 0.005);
  EXPECT_TRUE(std::isinf(hard.beta));
  EXPECT_EQ(hard.samples, 200000u);
  ASSERT_EQ(c2s_soft_bethe(p.p, 1.2, 0.0, 1000, 1, &soft), C2S_OK);
  EXPECT_NEAR(soft.value, std::log(2.0), 1e-12);
  EXPECT_NEAR(c2s_first_moment_bound(1.0), std::log(2.0) + 0.5 * std::log(0.75), 1e-14);

  const double grid[] = {0.5, 1.0};
  c2s_curve_point pts[2];
  ASSERT_EQ(c2s_curve(grid, 2, 10, 5000, 20000, 1, pts), C2S_OK);
  EXPECT_EQ(pts[1].d, 1.0);
  EXPECT_LT(pts[1].bethe, pts[1].bound + 3 * pts[1].std_error);

  c2s_ass_result ass{};
  ASSERT_EQ(c2s_ass(30, 0.5, 50, 0, 1, &ass), C2S_OK);
  EXPECT_EQ(ass.trials, 50u);
  EXPECT_EQ(ass.difference.count + ass.skipped, 50u);
}

TEST(CApi, Trees) {
  c2s_tree* t = nullptr;
  ASSERT_EQ(c2s_tree_sample(1.5, 4, 3, 100000, &t), C2S_OK);
  Formula f;
  ASSERT_EQ(c2s_tree_to_formula(t, &f.f), C2S_OK);
  EXPECT_EQ(c2s_formula_num_vars(f.f), c2s_tree_num_vars(t));
  EXPECT_EQ(c2s_formula_num_clauses(f.f), c2s_tree_num_vars(t) - 1);
  EXPECT_LE(c2s_tree_boundary_size(t), c2s_tree_num_vars(t));
  c2s_tree_free(t);
  EXPECT_EQ(c2s_tree_sample(1.9, 60, 1, 10, &t), C2S_TREE_TOO_LARGE);

  std::vector<c2s_tree_row> rows(3 * 5);
  ASSERT_EQ(c2s_tree_experiment(1.5, 5, 3, 9, rows.data()), C2S_OK);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].trial, i / 5);
    EXPECT_EQ(rows[i].level, i % 5 + 1);
    EXPECT_LE(rows[i].sigma_minus, rows[i].unconditional + 1e-12);
    EXPECT_LE(rows[i].unconditional, rows[i].sigma_plus + 1e-12);
  }
}

TEST(CApi, UnitClausePropagation) {
  const int64_t chain[] = {1, 2, -2, 3};
  Formula f;
  ASSERT_EQ(c2s_formula_create(3, 2, chain, &f.f), C2S_OK);
  std::vector<int8_t> chi(3);
  ASSERT_EQ(c2s_parse_impose(" 1 = -1 ", 3, chi.data()), C2S_OK);
  EXPECT_EQ(chi, (std::vector<int8_t>{-1, 0, 0}));
  EXPECT_EQ(c2s_parse_impose("4=+1", 3, chi.data()), C2S_INVALID_ARGUMENT);

  c2s_ucp_result r{};
  std::vector<int8_t> imposed(3);
  ASSERT_EQ(c2s_ucp(f.f, chi.data(), &r, imposed.data()), C2S_OK);
  EXPECT_EQ(r.i_chi, 3u);
  EXPECT_EQ(r.contradiction, 0);
  EXPECT_EQ(imposed, (std::vector<int8_t>{-1, 1, 1}));

  int holds = 0;
  char* z = nullptr;
  char* z_chi = nullptr;
  uint32_t i_chi = 0;
  ASSERT_EQ(c2s_fact_check(f.f, chi.data(), 0, &holds, &z, &z_chi, &i_chi), C2S_OK);
  EXPECT_EQ(holds, 1);
  EXPECT_EQ(take(z), "4");
  EXPECT_EQ(take(z_chi), "1");
  EXPECT_EQ(i_chi, 3u);
}

TEST(CApi, ThreadCountDoesNotChangeResults) {
  std::vector<std::vector<double>> runs;
  for (unsigned threads : {1u, 4u, 8u}) {
    c2s_set_threads(threads);
    Population p;
    ASSERT_EQ(c2s_de_run(1.4, 5, 30000, 6, &p.p, nullptr), C2S_OK);
    std::vector<double> eta(30000);
    ASSERT_EQ(c2s_population_eta(p.p, eta.data()), C2S_OK);
    c2s_estimate e{};
    ASSERT_EQ(c2s_bethe(p.p, 1.4, 100000, 6, 0.0, &e), C2S_OK);
    eta.push_back(e.value);
    eta.push_back(e.std_error);
    runs.push_back(std::move(eta));
  }
  c2s_set_threads(0);
  EXPECT_EQ(runs[0], runs[1]);
  EXPECT_EQ(runs[0], runs[2]);
}

}  // namespace
