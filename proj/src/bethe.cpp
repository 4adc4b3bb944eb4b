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

#include "cavity2sat/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "cavity2sat/error.hpp"
#include "cavity2sat/formula.hpp"
#include "cavity2sat/gw_tree.hpp"
#include "cavity2sat/numeric.hpp"
#include "cavity2sat/parallel.hpp"
#include "cavity2sat/rng.hpp"

namespace cavity2sat {
namespace {

void check_regime(double d) {
  if (!(d >= 0.0) || !std::isfinite(d)) {
    throw InvalidArgument("density d must be a finite nonnegative number");
  }
  if (d >= 2.0) throw OutOfRegime("d must be < 2");
}

template <typename Sample>
RunningStats mc_mean(std::uint64_t samples, Sample&& sample) {
  std::vector<RunningStats> parts(chunk_count(samples));
  parallel_for(parts.size(), [&](std::size_t c) {
    const std::uint64_t lo = c * kReductionChunk;
    const std::uint64_t hi = std::min<std::uint64_t>(samples, lo + kReductionChunk);
    for (std::uint64_t j = lo; j < hi; ++j) parts[c].add(sample(j));
  });
  RunningStats all;
  for (const RunningStats& part : parts) all.merge(part);
  return all;
}

// E[ln(2^-a + 2^-b)] for a, b ~ Po(d/2) independent.
double control_mean(double d) {
  const double lambda = d / 2.0;
  constexpr int kTerms = 120;
  std::vector<long double> pmf(kTerms);
  pmf[0] = std::exp(static_cast<long double>(-lambda));
  for (int k = 1; k < kTerms; ++k) pmf[k] = pmf[k - 1] * lambda / k;
  long double total = 0.0L;
  for (int a = 0; a < kTerms; ++a) {
    for (int b = 0; b < kTerms; ++b) {
      const int lo = std::min(a, b), gap = std::abs(a - b);
      total += pmf[a] * pmf[b] *
               (-lo * static_cast<long double>(kLn2) + std::log1p(std::ldexp(1.0L, -gap)));
    }
  }
  return static_cast<double>(total);
}

}  // namespace

BetheEstimate bethe_free_entropy(const Population& p, double d, std::uint64_t samples,
                                 std::uint64_t seed, double lambda_eps) {
  check_regime(d);
  if (samples == 0) throw InvalidArgument("sample count must be positive");
  if (p.eta.empty()) throw InvalidArgument("population is empty");
  if (lambda_eps < 0.0) throw InvalidArgument("lambda_eps must be nonnegative");
  const std::vector<double>& eta = p.eta;
  const double log_eps = lambda_eps > 0.0 ? std::log(lambda_eps) : kNegInf;
  // Control variate: the same draws evaluated at eta = 0, whose mean is
  // known in closed form. Samples touching only zeros contribute exactly 0.
  const double ln34 = std::log(0.75);
  const double control = control_mean(d) - 0.5 * d * ln34;
  const RunningStats stats = mc_mean(samples, [&](std::uint64_t j) {
    CounterRng rng(seed, StreamTag::kBethe, j);
    const std::uint64_t k_minus = rng.poisson(d / 2.0);
    const std::uint64_t k_plus = rng.poisson(d / 2.0);
    double a = 0.0, b = 0.0;
    // The fixed point is sign symmetric; a random sign per draw removes the
    // first-order bias of a slightly asymmetric finite population.
    auto draw = [&] {
      const double s = rng.sign();
      return log_sigmoid(s * eta[rng.uniform_index(eta.size())]);
    };
    for (std::uint64_t i = 0; i < k_minus; ++i) a += draw();
    for (std::uint64_t i = 0; i < k_plus; ++i) b += draw();
    const double l1 = draw();
    const double l2 = draw();
    const double first = std::max(log_add_exp(a, b), log_eps);
    const double second = std::max(log1m_exp(l1 + l2), log_eps);
    const double at_zero =
        log_add_exp(-static_cast<double>(k_minus) * kLn2, -static_cast<double>(k_plus) * kLn2) -
        0.5 * d * ln34;
    return (first - 0.5 * d * second) - at_zero;
  });
  return BetheEstimate{stats.mean + control, stats.std_error(), samples, d, kHardBeta};
}

double first_moment_bound(double d) {
  if (!(d >= 0.0)) throw InvalidArgument("density d must be nonnegative");
  return (1.0 - d) * kLn2 + 0.5 * d * std::log(3.0);
}

BetheEstimate soft_bethe(const Population& p, double d, double beta,
                         std::uint64_t samples, std::uint64_t seed) {
  if (!(d >= 0.0) || !std::isfinite(d)) {
    throw InvalidArgument("density d must be a finite nonnegative number");
  }
  if (!(beta >= 0.0)) throw InvalidArgument("beta must be nonnegative");
  if (samples == 0) throw InvalidArgument("sample count must be positive");
  if (p.eta.empty()) throw InvalidArgument("population is empty");
  const std::vector<double>& eta = p.eta;
  // 1 - c psi(x) = psi(-x) + psi(x) e^-beta; -inf - beta stays -inf.
  const RunningStats stats = mc_mean(samples, [&](std::uint64_t j) {
    CounterRng rng(seed, StreamTag::kSoftBethe, j);
    const std::uint64_t k = rng.poisson(d);
    double plus = 0.0, minus = 0.0;
    for (std::uint64_t i = 0; i < k; ++i) {
      const int s = rng.sign();
      const double x = rng.sign() * eta[rng.uniform_index(eta.size())];
      const double factor = log_add_exp(log_sigmoid(-x), log_sigmoid(x) - beta);
      (s > 0 ? minus : plus) += factor;
    }
    const double first = log_add_exp(plus, minus);
    const double lq = log_sigmoid(rng.sign() * eta[rng.uniform_index(eta.size())]) +
                      log_sigmoid(rng.sign() * eta[rng.uniform_index(eta.size())]);
    const double second = log_add_exp(log1m_exp(lq), lq - beta);
    return first - 0.5 * d * second;
  });
  return BetheEstimate{stats.mean, stats.std_error(), samples, d, beta};
}

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw InvalidArgument("grid needs lo <= hi and step > 0");
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5));
  for (std::size_t i = 0; i <= count; ++i) {
    // Round to 12 digits so 0.1 * 3 prints as 0.3.
    out.push_back(std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12);
  }
  return out;
}

std::vector<CurvePoint> curve(const std::vector<double>& d_grid, unsigned iterations,
                              std::size_t population, std::uint64_t samples,
                              std::uint64_t seed) {
  for (double d : d_grid) check_regime(d);
  std::vector<CurvePoint> out;
  for (double d : d_grid) {
    const DeRun run = de_run(d, iterations, population, seed);
    const BetheEstimate b = bethe_free_entropy(run.eta, d, samples, seed);
    out.push_back(CurvePoint{d, b.value, first_moment_bound(d), b.std_error});
  }
  return out;
}

AssResult ass_difference(std::uint32_t n, double d, std::uint64_t trials,
                         std::uint32_t cap, std::uint64_t seed) {
  if (trials == 0) throw InvalidArgument("trial count must be positive");
  struct Trial {
    std::optional<double> delta1, delta2;
  };
  std::vector<Trial> results(trials);
  parallel_for(trials, [&](std::size_t t) {
    const CoupledTriple triple = sample_coupled(n, d, trial_seed(seed, t));
    try {
      const double base = count_exact(triple.base, cap).log_z;
      const double grown = count_exact(triple.grown, cap).log_z;
      const double extended = count_exact(triple.extended, cap).log_z;
      results[t].delta1 = extended - base;
      results[t].delta2 = grown - base;
    } catch (const ComponentTooLarge&) {
    }
  });
  AssResult out;
  out.trials = trials;
  for (const Trial& t : results) {
    if (!t.delta1) {
      ++out.skipped;
      continue;
    }
    out.delta1.add(*t.delta1);
    out.delta2.add(*t.delta2);
    out.difference.add(*t.delta1 - *t.delta2);
  }
  return out;
}

}  // namespace cavity2sat
