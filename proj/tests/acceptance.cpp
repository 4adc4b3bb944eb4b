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

// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cavity2sat/bethe.hpp"
#include "cavity2sat/bp.hpp"
#include "cavity2sat/density_evolution.hpp"
#include "cavity2sat/error.hpp"
#include "cavity2sat/exact_count.hpp"
#include "cavity2sat/formula.hpp"
#include "cavity2sat/gw_tree.hpp"
#include "cavity2sat/numeric.hpp"
#include "cavity2sat/parallel.hpp"
#include "cavity2sat/rng.hpp"
#include "cavity2sat/ucp.hpp"
#include "oracle.hpp"

namespace cavity2sat {
namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

// Hex-float rendering so equality of strings is bit equality.
void put(std::ostringstream& out, double x) { out << fmt("%a,", x); }

// ---------------------------------------------------------------------------
// 1

std::string bethe_12_output(double* value = nullptr, double* se = nullptr) {
  const DeRun run = de_run(1.2, 24, 200000, 1);
  const BetheEstimate b = bethe_free_entropy(run.eta, 1.2, 1000000, 1);
  if (value) *value = b.value;
  if (se) *se = b.std_error;
  std::ostringstream out;
  put(out, b.value);
  put(out, b.std_error);
  return out.str();
}

Verdict criterion1() {
  double v = 0, se = 0;
  bethe_12_output(&v, &se);
  return {std::abs(v - 0.515) <= 0.005, fmt("bethe(1.2) = %.5f +- %.5f, target 0.515 +- 0.005", v, se)};
}

// ---------------------------------------------------------------------------
// 2

Verdict criterion2() {
  const auto points = curve(make_grid(0.1, 1.9, 0.1), 24, 200000, 4000000, 2);
  bool dominance = true, gap = true;
  double worst_gap = 1e9;
  double worst_at = 0;
  for (const CurvePoint& p : points) {
    dominance &= p.bethe <= p.bound + 3 * p.std_error;
    if (p.d >= 0.2 - 1e-9 && p.d <= 1.8 + 1e-9) {
      const double z = (p.bound - p.bethe) / p.std_error;
      gap &= z > 3;
      if (z < worst_gap) {
        worst_gap = z;
        worst_at = p.d;
      }
    }
  }
  return {dominance && gap && points.size() == 19,
          fmt("%zu grid points, dominance %s, smallest gap %.1f std errors at d = %.1f",
              points.size(), dominance ? "holds" : "violated", worst_gap, worst_at)};
}

// ---------------------------------------------------------------------------
// 3

// Exact marginal of every variable of a tree formula by a two-state DP
// rooted at each variable in turn, with normalised (Z+, Z-) pairs.
std::vector<double> tree_marginals_oracle(const Formula& f) {
  const std::uint32_t n = f.num_vars();
  std::vector<std::vector<std::pair<VarId, std::pair<int, int>>>> adj(n);
  for (const Clause& c : f.clauses()) {
    adj[c.first.var].push_back({c.second.var, {c.first.sign, c.second.sign}});
    adj[c.second.var].push_back({c.first.var, {c.second.sign, c.first.sign}});
  }
  std::function<std::pair<double, double>(VarId, VarId)> solve = [&](VarId v, VarId from) {
    double zp = 1, zm = 1;
    for (const auto& [u, signs] : adj[v]) {
      if (u == from) continue;
      const auto [cp, cm] = solve(u, v);
      const auto allowed = [&, su = signs.second](int value_v, int sv) {
        // clause (v = sv) or (u = su)
        return value_v == sv ? cp + cm : (su > 0 ? cp : cm);
      };
      zp *= allowed(1, signs.first);
      zm *= allowed(-1, signs.first);
      const double s = zp + zm;
      zp /= s;
      zm /= s;
    }
    return std::pair{zp, zm};
  };
  std::vector<double> out(n);
  for (VarId v = 0; v < n; ++v) {
    const auto [p, m] = solve(v, v);
    out[v] = p / (p + m);
  }
  return out;
}

Verdict criterion3() {
  const double ds[] = {0.8, 1.5, 1.9};
  double worst = 0.0;
  int trees = 0;
  std::size_t largest = 0;
  for (std::uint64_t seed = 0; trees < 200; ++seed) {
    const double d = ds[seed % 3];
    const unsigned depth = 1 + static_cast<unsigned>(splitmix64(seed) % 10);
    GWTree t = sample_tree(d, depth, trial_seed(3, seed), 1'000'000);
    if (t.num_nodes() > 500) continue;
    ++trees;
    largest = std::max(largest, t.num_nodes());
    const Formula f = t.to_formula();
    const double dp_root = unconditional_root_marginal(t);
    const auto oracle = tree_marginals_oracle(f);
    const BpRun at_depth = bp_run(f, depth);
    worst = std::max(worst, std::abs(at_depth.marginals.marginal[0] - dp_root));
    worst = std::max(worst, std::abs(oracle[0] - dp_root));
    const BpRun all = bp_run(f, 2 * depth);
    for (VarId x = 0; x < f.num_vars(); ++x) {
      worst = std::max(worst, std::abs(all.marginals.marginal[x] - oracle[x]));
    }
  }
  return {worst <= 1e-10,
          fmt("%d trees (up to %zu nodes), max |BP - exact| = %.2e", trees, largest, worst)};
}

// ---------------------------------------------------------------------------
// 4

Verdict criterion4() {
  const double ds[] = {0.5, 1.0, 1.9};
  int agree = 0, total = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(i % 11);
    const Formula f = sample_formula(n, ds[i % 3], trial_seed(4, i));
    ++total;
    agree += count_exact(f).z == BigInt(testing::brute_count(f));
  }
  return {agree == total, fmt("%d of %d formulas agree exactly with 2^n enumeration", agree, total)};
}

// ---------------------------------------------------------------------------
// 5

Verdict criterion5() {
  const double ds[] = {1.5, 1.9};
  int trees = 0, ok = 0;
  std::uint64_t boundaries = 0;
  for (std::uint64_t seed = 0; trees < 100; ++seed) {
    const unsigned depth = 2 + static_cast<unsigned>(seed % 4);
    const GWTree t = sample_tree(ds[seed % 2], depth, trial_seed(5, seed), 1'000'000);
    const std::size_t nb = t.boundary().size();
    if (nb == 0 || nb > 14) continue;
    ++trees;
    const BoundaryAssignment bp = extremal_boundary(t, 1).boundary;
    const BoundaryAssignment bm = extremal_boundary(t, -1).boundary;
    const RootCounts plus = root_counts_exact(t, &bp);
    const RootCounts minus = root_counts_exact(t, &bm);
    // Rational comparison by cross multiplication.
    BigInt best_num = 0, best_den = 1, worst_num = 1, worst_den = 1;
    for (std::uint32_t mask = 0; mask < (1u << nb); ++mask) {
      BoundaryAssignment b(nb);
      for (std::size_t i = 0; i < nb; ++i) b[i] = (mask >> i) & 1 ? 1 : -1;
      const RootCounts c = root_counts_exact(t, &b);
      const BigInt den = c.plus + c.minus;
      if (den == 0) continue;
      ++boundaries;
      if (c.plus * best_den > best_num * den) {
        best_num = c.plus;
        best_den = den;
      }
      if (c.plus * worst_den < worst_num * den) {
        worst_num = c.plus;
        worst_den = den;
      }
    }
    const bool max_hit = best_num * (plus.plus + plus.minus) == plus.plus * best_den;
    const bool min_hit = worst_num * (minus.plus + minus.minus) == minus.plus * worst_den;
    ok += max_hit && min_hit;
  }
  return {ok == trees, fmt("%d of %d trees: sigma+ attains the max and sigma- the min (%llu "
                           "satisfying boundary conditions)",
                           ok, trees, static_cast<unsigned long long>(boundaries))};
}

// ---------------------------------------------------------------------------
// 6

Verdict criterion6() {
  const unsigned depth = 6;
  const std::uint64_t trials = 2000;
  const auto rows = tree_experiment(1.5, depth, trials, 6);
  std::vector<RunningStats> level(depth), step(depth - 1);
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (unsigned l = 0; l < depth; ++l) {
      const TreeRow& r = rows[t * depth + l];
      level[l].add(std::abs(r.sigma_plus - r.unconditional));
      if (l > 0) {
        const TreeRow& prev = rows[t * depth + l - 1];
        step[l - 1].add(std::abs(r.sigma_plus - r.unconditional) -
                        std::abs(prev.sigma_plus - prev.unconditional));
      }
    }
  }
  bool monotone = true;
  for (const RunningStats& s : step) monotone &= s.mean <= 2 * s.std_error();
  const double ratio = level[depth - 1].mean / level[0].mean;
  std::string trace;
  for (const RunningStats& s : level) trace += fmt("%.4f ", s.mean);
  return {monotone && ratio < 0.5,
          fmt("mean gap by level: %s(ratio l=6/l=1 %.3f, %s)", trace.c_str(), ratio,
              monotone ? "nonincreasing" : "increase beyond 2 std errors")};
}

// ---------------------------------------------------------------------------
// 7

constexpr std::size_t kContractionPopulation = 1'000'000;
constexpr unsigned kContractionIterations = 24;

std::string contraction_output(std::vector<ContractionTrace>* traces = nullptr) {
  std::ostringstream out;
  for (double d : {0.5, 1.0, 1.5, 1.9}) {
    ContractionTrace t = coupled_contraction(d, kContractionPopulation, kContractionIterations, 7);
    for (double w : t.w2) put(out, w);
    put(out, t.rate);
    if (traces) traces->push_back(std::move(t));
  }
  return out.str();
}

Verdict criterion7() {
  std::vector<ContractionTrace> traces;
  contraction_output(&traces);
  const double ds[] = {0.5, 1.0, 1.5, 1.9};
  bool ok = true;
  std::string detail;
  for (int i = 0; i < 4; ++i) {
    const double bound = std::sqrt(ds[i] / 2) + 0.05;
    ok &= !traces[i].ratio.empty() && traces[i].rate <= bound;
    detail += fmt("%sd=%.1f rate %.3f <= %.3f (%zu ratios)", i ? "; " : "", ds[i], traces[i].rate,
                  bound, traces[i].ratio.size());
  }
  return {ok, detail};
}

// ---------------------------------------------------------------------------
// 8

Verdict criterion8() {
  const std::size_t n = 200000;
  const DeRun run = de_run(1.5, 24, n, 8);
  const Moments m = moments(run.mu);
  const double tol = 4 / std::sqrt(static_cast<double>(n));
  const bool mean_ok = std::abs(m.mean - 0.5) <= 4 * m.std_dev / std::sqrt(static_cast<double>(n));
  // F_mu(x) = P(eta <= logit x) and F_mu(1 - x) is read as a left limit, so
  // atoms count once. Negating eta is exact where psi rounds.
  std::vector<double> sorted(run.eta.eta);
  std::sort(sorted.begin(), sorted.end());
  double worst = 0;
  for (int k = 1; k <= 9; ++k) {
    const double x = k / 10.0;
    const double t = std::log(x) - std::log1p(-x);
    worst = std::max(worst, std::abs(cdf_right(sorted, t) + cdf_left(sorted, -t) - 1));
  }
  return {mean_ok && worst <= tol,
          fmt("|mean - 1/2| = %.2e (limit %.2e), max decile asymmetry %.2e (limit %.2e)",
              std::abs(m.mean - 0.5), 4 * m.std_dev / std::sqrt(static_cast<double>(n)), worst, tol)};
}

// ---------------------------------------------------------------------------
// 9

std::string marginal_convergence_output(std::vector<double>* w1 = nullptr) {
  std::ostringstream out;
  for (double d : {0.5, 1.0}) {
    const Formula f = sample_formula(10000, d, 9);
    const auto bp = empirical_marginal_distribution(f, 12);
    const DeRun run = de_run(d, 24, 200000, 9);
    const double w = wasserstein(bp, run.mu, 1);
    for (double x : bp) put(out, x);
    put(out, w);
    if (w1) w1->push_back(w);
  }
  return out.str();
}

Verdict criterion9() {
  std::vector<double> w1;
  marginal_convergence_output(&w1);
  RunningStats diff;
  int instances = 0;
  for (std::uint64_t seed = 0; instances < 200; ++seed) {
    const Formula f = sample_formula(60, 0.5, trial_seed(9, seed));
    if (count_exact(f).z == 0) continue;
    ++instances;
    const auto exact = marginals_exact(f);
    const auto bp = bp_run(f, 12).marginals.marginal;
    for (VarId x = 0; x < f.num_vars(); ++x) diff.add(std::abs(exact[x] - bp[x]));
  }
  const bool ok = w1[0] <= 0.02 && w1[1] <= 0.02 && diff.mean <= 0.02;
  return {ok, fmt("W1(BP, pi_d): d=0.5 %.4f, d=1.0 %.4f; n=60 mean |exact - BP| %.2e over %d "
                  "instances",
                  w1[0], w1[1], diff.mean, instances)};
}

// ---------------------------------------------------------------------------
// 10

Verdict criterion10() {
  CounterRng rng(10, StreamTag::kTrial);
  int violations = 0, pairs = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Formula f = sample_formula(14, i % 2 ? 1.5 : 0.8, trial_seed(10, i));
    PartialAssignment chi(14, 0);
    const std::uint64_t size = 1 + rng.uniform_index(4);
    for (std::uint64_t placed = 0; placed < size;) {
      const auto x = rng.uniform_index(14);
      if (chi[x] != 0) continue;
      chi[x] = static_cast<std::int8_t>(rng.sign());
      ++placed;
    }
    ++pairs;
    violations += !check_fact_uc(f, chi).holds;
  }
  return {violations == 0, fmt("%d violations over %d (formula, chi) pairs", violations, pairs)};
}

// ---------------------------------------------------------------------------
// 11

Verdict criterion11() {
  const AssResult r = ass_difference(60, 0.5, 500, kDefaultCap, 11);
  const DeRun run = de_run(0.5, 24, 200000, 11);
  const BetheEstimate b = bethe_free_entropy(run.eta, 0.5, 1000000, 11);
  const double se = std::hypot(r.difference.std_error(), b.std_error);
  const double gap = std::abs(r.difference.mean - b.value);
  return {gap <= 3 * se && r.skip_rate() < 0.05,
          fmt("delta1 - delta2 = %.4f +- %.4f vs bethe %.4f +- %.4f (%.1f std errors), skip rate %.3f",
              r.difference.mean, r.difference.std_error(), b.value, b.std_error, gap / se,
              r.skip_rate())};
}

// ---------------------------------------------------------------------------
// 12

Verdict criterion12() {
  const std::uint32_t n = 60;
  const double d = 1.0, beta = 4.0;
  // Exact ln Z_beta per instance by variable elimination, so instances with
  // components beyond the enumeration cap are kept: dropping them biases the
  // mean upward.
  RunningStats per_var;
  std::uint64_t enumerated = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const Formula f = sample_formula(n, d, trial_seed(12, seed));
    double log_z;
    try {
      log_z = soft_partition(f, beta, kDefaultCap);
      ++enumerated;
    } catch (const ComponentTooLarge&) {
      log_z = testing::elimination_soft(f, beta);
    }
    per_var.add(log_z / n);
  }
  const DeRun run = de_run(d, 24, 200000, 12);
  const BetheEstimate at_beta = soft_bethe(run.eta, d, beta, 1000000, 12);
  const bool ordered =
      per_var.mean <= at_beta.value + 3 * std::hypot(per_var.std_error(), at_beta.std_error);

  bool decreasing = true;
  std::string trace;
  BetheEstimate prev{};
  bool first = true;
  for (double b : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    const BetheEstimate s = soft_bethe(run.eta, d, b, 1000000, 12);
    if (!first) decreasing &= s.value <= prev.value + 2 * std::hypot(s.std_error, prev.std_error);
    trace += fmt(first ? "%.4f" : " %.4f", s.value);
    prev = s;
    first = false;
  }
  const BetheEstimate hard = bethe_free_entropy(run.eta, d, 1000000, 12);
  const bool limit = std::abs(prev.value - hard.value) <= 0.01;
  return {ordered && decreasing && limit,
          fmt("n^-1 E ln Z_4 = %.4f +- %.4f (%.0f instances, %llu by enumeration) vs soft %.4f +- %.4f; "
              "beta 1..16: %s; hard %.4f",
              per_var.mean, per_var.std_error(), per_var.count,
              static_cast<unsigned long long>(enumerated), at_beta.value, at_beta.std_error,
              trace.c_str(), hard.value)};
}

// ---------------------------------------------------------------------------
// 13

Verdict criterion13() {
  std::vector<std::string> outputs;
  for (unsigned threads : {1u, 4u, 8u}) {
    set_thread_count(threads);
    outputs.push_back(bethe_12_output() + "|" + contraction_output() + "|" +
                      marginal_convergence_output());
  }
  set_thread_count(0);
  const bool same = outputs[0] == outputs[1] && outputs[1] == outputs[2];
  return {same, fmt("criteria 1, 7, 9 under 1/4/8 threads: %s (%zu bytes each)",
                    same ? "byte-identical" : "outputs differ", outputs[0].size())};
}

}  // namespace
}  // namespace cavity2sat

int main(int argc, char** argv) {
  using namespace cavity2sat;
  const std::vector<std::pair<const char*, Verdict (*)()>> criteria = {
      {"Bethe value at d = 1.2", criterion1},
      {"first-moment dominance and strict gap", criterion2},
      {"BP exact on trees", criterion3},
      {"component counting equals enumeration", criterion4},
      {"extremal boundary conditions", criterion5},
      {"Gibbs-uniqueness decay", criterion6},
      {"coupled contraction", criterion7},
      {"symmetry of the fixed point", criterion8},
      {"BP marginal convergence", criterion9},
      {"unit-clause count inequality", criterion10},
      {"Aizenman-Sims-Starr difference", criterion11},
      {"soft-model ordering", criterion12},
      {"determinism across thread counts", criterion13},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!only.empty() && !only.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !v.pass;
    std::printf("%s %2d %s: %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", id, criteria[i].first,
                v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed;
}
