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

#include "cavity2sat/density_evolution.hpp"

#include <algorithm>
#include <cmath>

#include "cavity2sat/error.hpp"
#include "cavity2sat/numeric.hpp"
#include "cavity2sat/parallel.hpp"
#include "cavity2sat/rng.hpp"

namespace cavity2sat {
namespace {

void check_density(double d) {
  if (!(d >= 0.0) || !std::isfinite(d)) {
    throw InvalidArgument("density d must be a finite nonnegative number");
  }
}

template <typename Body>
void for_each_chunk(std::size_t n, Body&& body) {
  parallel_for(chunk_count(n), [&](std::size_t c) {
    const std::size_t lo = c * kReductionChunk;
    const std::size_t hi = std::min(n, lo + kReductionChunk);
    for (std::size_t i = lo; i < hi; ++i) body(i);
  });
}

double ll_sample(const std::vector<double>& eta, double d, CounterRng& rng) {
  const std::uint64_t k = rng.poisson(d);
  double out = 0.0;
  for (std::uint64_t i = 0; i < k; ++i) {
    const double s = rng.sign();
    const double s2 = rng.sign();
    const double x = eta[rng.uniform_index(eta.size())];
    out += s * log_sigmoid(s2 * x);
  }
  return out;
}

double ll_plus_sample(const std::vector<double>& eta, double d, CounterRng& rng) {
  const std::uint64_t k = rng.poisson(d);
  double out = 0.0;
  for (std::uint64_t i = 0; i < k; ++i) {
    const double s = rng.sign();
    const double x = eta[rng.uniform_index(eta.size())];
    out += s * softplus(s * x);
  }
  return out;
}

}  // namespace

Population de_init(std::size_t n) {
  if (n == 0) throw InvalidArgument("population size must be positive");
  return Population{std::vector<double>(n, 0.0), 0};
}

Population de_step(const Population& p, double d, std::uint64_t seed) {
  check_density(d);
  if (p.eta.empty()) throw InvalidArgument("population is empty");
  Population out{std::vector<double>(p.size()), p.generation + 1};
  for_each_chunk(p.size(), [&](std::size_t j) {
    CounterRng rng(seed, StreamTag::kPopulation, p.generation, j);
    out.eta[j] = ll_sample(p.eta, d, rng);
  });
  return out;
}

Population de_step_plus(const Population& p, double d, std::uint64_t seed) {
  check_density(d);
  if (p.eta.empty()) throw InvalidArgument("population is empty");
  Population out{std::vector<double>(p.size()), p.generation + 1};
  for_each_chunk(p.size(), [&](std::size_t j) {
    CounterRng rng(seed, StreamTag::kPopulationPlus, p.generation, j);
    out.eta[j] = ll_plus_sample(p.eta, d, rng);
  });
  return out;
}

DeRun de_run(double d, unsigned iterations, std::size_t n, std::uint64_t seed) {
  check_density(d);
  if (d >= 2.0) throw OutOfRegime("d must be < 2");
  DeRun run;
  run.eta = de_init(n);
  for (unsigned g = 0; g < iterations; ++g) {
    Population next = de_step(run.eta, d, seed);
    run.w2_trace.push_back(wasserstein(run.eta.eta, next.eta, 2));
    run.eta = std::move(next);
  }
  run.mu = mu_image(run.eta);
  return run;
}

std::vector<double> mu_image(const Population& p) {
  static const double lo = std::exp(-700.0);
  static const double hi = 1.0 - std::ldexp(1.0, -53);
  std::vector<double> mu(p.size());
  for_each_chunk(p.size(), [&](std::size_t j) {
    mu[j] = std::clamp(sigmoid(p.eta[j]), lo, hi);
  });
  return mu;
}

double wasserstein(std::span<const double> a, std::span<const double> b, int q) {
  if (q != 1 && q != 2) throw InvalidArgument("Wasserstein order must be 1 or 2");
  if (a.empty() || b.empty()) throw InvalidArgument("Wasserstein of an empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  // Walk the merged breakpoints i/n and j/m of the two quantile functions.
  std::size_t i = 0, j = 0;
  double u = 0.0, total = 0.0;
  while (i < x.size() && j < y.size()) {
    const double next_i = static_cast<double>(i + 1) / n;
    const double next_j = static_cast<double>(j + 1) / m;
    const double next = std::min(next_i, next_j);
    const double diff = std::abs(x[i] - y[j]);
    total += (next - u) * (q == 1 ? diff : diff * diff);
    u = next;
    const std::size_t ci = (i + 1) * y.size(), cj = (j + 1) * x.size();
    if (ci <= cj) ++i;
    if (cj <= ci) ++j;
  }
  total = std::max(total, 0.0);
  return q == 1 ? total : std::sqrt(total);
}

double cdf_left(std::span<const double> sorted, double x) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

double cdf_right(std::span<const double> sorted, double x) {
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
  return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

std::vector<CdfPoint> cdf_export(std::span<const double> mu, unsigned resolution) {
  if (resolution == 0) throw InvalidArgument("CDF resolution must be positive");
  if (mu.empty()) throw InvalidArgument("CDF of an empty sample");
  std::vector<double> sorted(mu.begin(), mu.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<CdfPoint> out;
  out.reserve(resolution + 1);
  for (unsigned i = 0; i <= resolution; ++i) {
    const double x = static_cast<double>(i) / resolution;
    out.push_back(CdfPoint{x, cdf_right(sorted, x)});
  }
  return out;
}

Moments moments(std::span<const double> x) {
  if (x.empty()) return {};
  std::vector<RunningStats> parts(chunk_count(x.size()));
  std::vector<double> squares(parts.size(), 0.0);
  parallel_for(parts.size(), [&](std::size_t c) {
    const std::size_t lo = c * kReductionChunk;
    const std::size_t hi = std::min(x.size(), lo + kReductionChunk);
    for (std::size_t i = lo; i < hi; ++i) {
      parts[c].add(x[i]);
      squares[c] += x[i] * x[i];
    }
  });
  RunningStats all;
  double second = 0.0;
  for (std::size_t c = 0; c < parts.size(); ++c) {
    all.merge(parts[c]);
    second += squares[c];
  }
  return Moments{all.mean, std::sqrt(all.variance()),
                 second / static_cast<double>(x.size())};
}

ContractionTrace coupled_contraction(double d, std::size_t n, unsigned iterations,
                                     std::uint64_t seed, unsigned burn_in,
                                     std::size_t min_support, double floor) {
  check_density(d);
  if (d >= 2.0) throw OutOfRegime("d must be < 2");
  std::vector<double> a = de_init(n).eta;
  std::vector<double> b =
      de_step(de_init(n), d, splitmix64(seed ^ stream_id(StreamTag::kContraction)))
          .eta;
  ContractionTrace trace;
  trace.w2.push_back(wasserstein(a, b, 2));
  std::vector<double> na(n), nb(n);
  std::sort(b.begin(), b.end());
  for (unsigned g = 1; g <= iterations; ++g) {
    for_each_chunk(n, [&](std::size_t j) {
      CounterRng rng(seed, StreamTag::kContraction, g, j);
      const std::uint64_t k = rng.poisson(d);
      double ya = 0.0, yb = 0.0;
      for (std::uint64_t i = 0; i < k; ++i) {
        const double s = rng.sign();
        const double s2 = rng.sign();
        const std::size_t idx = rng.uniform_index(n);
        ya += s * log_sigmoid(s2 * a[idx]);
        yb += s * log_sigmoid(s2 * b[idx]);
      }
      na[j] = ya;
      nb[j] = yb;
    });
    a.swap(na);
    b.swap(nb);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    trace.w2.push_back(wasserstein(a, b, 2));
    std::size_t support = 0;
    for (std::size_t j = 0; j < n; ++j) support += a[j] != b[j];
    trace.support.push_back(support);
    const double prev = trace.w2[g - 1];
    if (g > burn_in && prev > floor && trace.w2[g] > floor && support >= min_support) {
      trace.ratio.push_back(trace.w2[g] / prev);
    }
  }
  double log_sum = 0.0;
  for (double r : trace.ratio) log_sum += std::log(r);
  trace.rate = trace.ratio.empty() ? 0.0 : std::exp(log_sum / trace.ratio.size());
  return trace;
}

}  // namespace cavity2sat
