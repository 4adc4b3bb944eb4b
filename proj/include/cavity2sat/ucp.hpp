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

#ifndef CAVITY2SAT_UCP_HPP
#define CAVITY2SAT_UCP_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "cavity2sat/exact_count.hpp"
#include "cavity2sat/formula.hpp"

namespace cavity2sat {

struct UcpResult {
  PartialAssignment imposed;   // chi extended by every forced value
  std::vector<VarId> closure;  // assigned variables, ascending
  std::uint32_t i_chi = 0;     // closure size, or n on contradiction
  bool contradiction = false;
};

enum class QueueOrder { kFifo, kLifo };

// Repeatedly: a clause with one literal falsified by an imposed value and
// the other variable unset imposes the value satisfying that other literal.
// A contradiction is any clause whose two literals both end up falsified.
UcpResult unit_clause_propagate(const Formula& f, const PartialAssignment& chi,
                                QueueOrder order = QueueOrder::kFifo);

// min over chi and its single-variable flips of unit_clause_propagate().i_chi.
std::uint32_t a_chi(const Formula& f, const PartialAssignment& chi);

struct FactCheck {
  bool holds = false;
  BigInt z;        // Z(f)
  BigInt z_chi;    // Z(f, chi)
  std::uint32_t i_chi = 0;
};

// Z(f) <= 2^{I_chi} * max(Z(f, chi), 1), all by exact counting.
FactCheck check_fact_uc(const Formula& f, const PartialAssignment& chi,
                        std::uint32_t cap = kDefaultCap);

// Parses "1=-1,3=+1" (1-based variables) into an assignment over n vars.
PartialAssignment parse_impose(std::string_view text, std::uint32_t n);

}  // namespace cavity2sat

#endif  // CAVITY2SAT_UCP_HPP
