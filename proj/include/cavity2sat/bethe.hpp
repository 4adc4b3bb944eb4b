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

#ifndef CAVITY2SAT_BETHE_HPP
#define CAVITY2SAT_BETHE_HPP

#include <cstdint>
#include <limits>
#include <vector>

#include "cavity2sat/density_evolution.hpp"
#include "cavity2sat/exact_count.hpp"
#include "cavity2sat/numeric.hpp"

namespace cavity2sat {

inline constexpr std::uint64_t kDefaultMcSamples = 1'000'000;
inline constexpr double kHardBeta = std::numeric_limits<double>::infinity();

struct BetheEstimate {
  double value = 0.0;      // nats per variable
  double std_error = 0.0;
  std::uint64_t samples = 0;
  double d = 0.0;
  double beta = kHardBeta;
};

// Monte Carlo estimate of
//   E[ln(prod_{i<=k-} mu_i + prod_{i<=k+} mu_{k- + i})] - (d/2) E[ln(1 - mu_1 mu_2)]
// with k+, k- ~ Po(d/2) and mu = psi(s eta), eta resampled from p and s a
// uniform sign. Products are sums of ln psi. A positive lambda_eps replaces ln by ln(max(., eps)).
// Sample j uses the stream (seed, j); chunks reduce in index order.
BetheEstimate bethe_free_entropy(const Population& p, double d, std::uint64_t samples,
                                 std::uint64_t seed, double lambda_eps = 0.0);

// (1 - d) ln 2 + (d / 2) ln 3.
double first_moment_bound(double d);

// Finite-beta functional with k ~ Po(d), c = 1 - e^-beta:
//   E[ln sum_s prod_i (1 - 1{s_i != s} c psi(s'_i eta_i))]
//     - (d/2) E[ln(1 - c psi(s_1 eta_1) psi(s_2 eta_2))].
// beta = kHardBeta gives the hard functional.
BetheEstimate soft_bethe(const Population& p, double d, double beta,
                         std::uint64_t samples, std::uint64_t seed);

struct CurvePoint {
  double d = 0.0;
  double bethe = 0.0;
  double bound = 0.0;
  double std_error = 0.0;
};

// de_run followed by bethe_free_entropy for each d, all with the same seed,
// so a row equals the single-point evaluation at that d.
std::vector<CurvePoint> curve(const std::vector<double>& d_grid, unsigned iterations,
                              std::size_t population, std::uint64_t samples,
                              std::uint64_t seed);

// Inclusive grid lo, lo + step, ..., up to hi (with a half-step tolerance).
std::vector<double> make_grid(double lo, double hi, double step);

struct AssResult {
  RunningStats delta1;      // ln(Z''' v 1) - ln(Z' v 1)
  RunningStats delta2;      // ln(Z'' v 1) - ln(Z' v 1)
  RunningStats difference;  // per-trial delta1 - delta2
  std::uint64_t trials = 0;
  std::uint64_t skipped = 0;  // trials with an oversized component

  double skip_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(skipped) / static_cast<double>(trials);
  }
};

// Coupled triples counted exactly; trial t uses sample_coupled with
// trial_seed(seed, t).
AssResult ass_difference(std::uint32_t n, double d, std::uint64_t trials,
                         std::uint32_t cap, std::uint64_t seed);

}  // namespace cavity2sat

#endif  // CAVITY2SAT_BETHE_HPP
