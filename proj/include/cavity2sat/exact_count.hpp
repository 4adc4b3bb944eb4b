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

#ifndef CAVITY2SAT_EXACT_COUNT_HPP
#define CAVITY2SAT_EXACT_COUNT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cavity2sat/formula.hpp"

namespace cavity2sat {

using BigInt = boost::multiprecision::cpp_int;

// Largest component handled by exhaustive enumeration unless the caller
// raises it. Hard ceiling is kMaxCap.
inline constexpr std::uint32_t kDefaultCap = 30;
inline constexpr std::uint32_t kMaxCap = 62;

struct CountResult {
  BigInt z;
  double log_z = 0.0;  // ln(max(z, 1))

  std::string z_decimal() const { return z.str(); }
};

// ln(max(z, 1)), accurate to the last bit of a double for any size of z.
double log_count(const BigInt& z);

// Exact number of satisfying assignments: the product of per-component
// counts times 2 per isolated variable. Throws ComponentTooLarge when a
// component has more than `cap` variables.
CountResult count_exact(const Formula& f, std::uint32_t cap = kDefaultCap);

// Satisfying assignments that agree with chi wherever chi is nonzero.
// chi.size() must equal f.num_vars().
CountResult count_conditional(const Formula& f, const PartialAssignment& chi,
                              std::uint32_t cap = kDefaultCap);

// p_x = Z(f, {x: +1}) / Z(f) for every variable. Throws Unsatisfiable when
// Z(f) = 0.
std::vector<double> marginals_exact(const Formula& f,
                                    std::uint32_t cap = kDefaultCap);

// ln sum_sigma exp(-beta * #violated clauses), exact per component and
// combined in log space.
double soft_partition(const Formula& f, double beta,
                      std::uint32_t cap = kDefaultCap);

}  // namespace cavity2sat

#endif  // CAVITY2SAT_EXACT_COUNT_HPP
