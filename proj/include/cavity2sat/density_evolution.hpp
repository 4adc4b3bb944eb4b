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

#ifndef CAVITY2SAT_DENSITY_EVOLUTION_HPP
#define CAVITY2SAT_DENSITY_EVOLUTION_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace cavity2sat {

inline constexpr std::size_t kDefaultPopulation = 200'000;
inline constexpr unsigned kDefaultIterations = 24;
inline constexpr unsigned kBurnIn = 5;

// Population of log-likelihood ratios eta. The mu-space image is
// psi(eta) = 1 / (1 + e^-eta) and is produced on demand by mu_image().
struct Population {
  std::vector<double> eta;
  unsigned generation = 0;

  std::size_t size() const { return eta.size(); }
};

// N copies of eta = 0.
Population de_init(std::size_t n);

// One step of LL_d: eta' = sum_{i<=k} s_i * ln psi(s'_i eta_{j_i}) with
// k ~ Po(d), independent uniform signs and indices drawn with replacement.
// Sample j of the output uses the stream (seed, generation, j).
Population de_step(const Population& p, double d, std::uint64_t seed);

// One step of LL+_d: eta' = sum_{i<=k} s_i * softplus(s_i eta_{j_i}).
Population de_step_plus(const Population& p, double d, std::uint64_t seed);

struct DeRun {
  Population eta;
  std::vector<double> mu;
  // W2 between generations g-1 and g for g = 1..iterations.
  std::vector<double> w2_trace;
};

// `iterations` steps of de_step from de_init(n). Throws OutOfRegime for
// d >= 2.
DeRun de_run(double d, unsigned iterations, std::size_t n, std::uint64_t seed);

// psi(eta) clamped to [e^-700, 1 - 2^-53].
std::vector<double> mu_image(const Population& p);

// Exact W_q (q = 1 or 2) between the empirical measures of a and b, by
// integrating the difference of their quantile functions. Sizes may differ.
double wasserstein(std::span<const double> a, std::span<const double> b, int q);

struct CdfPoint {
  double x;
  double f;  // fraction of samples <= x
};

// Empirical CDF of mu-space values at x = i / resolution, i = 0..resolution.
std::vector<CdfPoint> cdf_export(std::span<const double> mu, unsigned resolution);

// Fraction of samples strictly below x, for the left limit F(x-).
double cdf_left(std::span<const double> sorted, double x);
double cdf_right(std::span<const double> sorted, double x);

struct Moments {
  double mean = 0.0;
  double std_dev = 0.0;
  double second = 0.0;  // E[x^2]
};

Moments moments(std::span<const double> x);

struct ContractionTrace {
  std::vector<double> w2;            // W2(A_g, B_g), g = 0..iterations
  std::vector<std::size_t> support;  // differing sorted pairs, g = 1..iterations
  std::vector<double> ratio;         // recorded w2[g] / w2[g-1]
  double rate = 0.0;                 // geometric mean of ratio
};

// Two LL_d chains from distinct inputs (delta_0 and one independent LL_d
// step of it) driven by common randomness: each step sorts both
// populations and applies the same (k, indices, signs) to each, so the
// quantile coupling is pushed through the operator. A ratio is recorded
// for g > burn_in while W2 exceeds `floor` and at least `min_support`
// sorted pairs differ; below that the ratio is dominated by a handful of
// samples.
ContractionTrace coupled_contraction(double d, std::size_t n, unsigned iterations,
                                     std::uint64_t seed, unsigned burn_in = kBurnIn,
                                     std::size_t min_support = 1000,
                                     double floor = 1e-9);

}  // namespace cavity2sat

#endif  // CAVITY2SAT_DENSITY_EVOLUTION_HPP
