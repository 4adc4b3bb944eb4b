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

#ifndef CAVITY2SAT_NUMERIC_HPP
#define CAVITY2SAT_NUMERIC_HPP

#include <algorithm>
#include <cmath>
#include <limits>

namespace cavity2sat {

inline constexpr double kLn2 = 0.693147180559945309417232121458176568;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ln(1 + e^z) without overflow or cancellation.
inline double softplus(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

// ln psi(z) = ln(1 / (1 + e^-z)).
inline double log_sigmoid(double z) { return -softplus(-z); }

// psi(z) = (1 + tanh(z/2)) / 2.
inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// ln(e^a + e^b); either argument may be -inf.
inline double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;
  return a + std::log1p(std::exp(b - a));
}

// ln(1 - e^x) for x <= 0.
inline double log1m_exp(double x) {
  if (x > -kLn2) return std::log(-std::expm1(x));
  return std::log1p(-std::exp(x));
}

// Mean and standard error accumulated with Welford updates; merge() is
// order-sensitive only through floating point, so callers reduce in a fixed
// order.
struct RunningStats {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }

  void merge(const RunningStats& other) {
    if (other.count == 0.0) return;
    if (count == 0.0) {
      *this = other;
      return;
    }
    const double total = count + other.count;
    const double delta = other.mean - mean;
    mean += delta * other.count / total;
    m2 += other.m2 + delta * delta * count * other.count / total;
    count = total;
  }

  double variance() const { return count > 1.0 ? m2 / (count - 1.0) : 0.0; }
  double std_error() const {
    return count > 1.0 ? std::sqrt(variance() / count) : 0.0;
  }
};

}  // namespace cavity2sat

#endif  // CAVITY2SAT_NUMERIC_HPP
