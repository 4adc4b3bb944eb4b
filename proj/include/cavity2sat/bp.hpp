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

#ifndef CAVITY2SAT_BP_HPP
#define CAVITY2SAT_BP_HPP

#include <cstdint>
#include <vector>

#include "cavity2sat/formula.hpp"

namespace cavity2sat {

// Messages for every directed edge e = 2a + slot (see FactorGraph). Only
// the probability of +1 is stored; the -1 value is 1 minus it.
struct MessageState {
  std::vector<double> clause_to_var;  // nu_{a -> x}(+1)
  std::vector<double> var_to_clause;  // nu_{x -> a}(+1)
  unsigned round = 0;
};

struct MarginalEstimate {
  std::vector<double> marginal;  // nu_x(+1) per variable
  unsigned round = 0;
};

MessageState init_messages(const FactorGraph& g);

// One synchronous round: clause-to-variable messages from the previous
// variable-to-clause messages, then variable-to-clause messages from the
// new clause-to-variable ones. A vanishing normaliser yields 1/2.
MessageState bp_step(const FactorGraph& g, const MessageState& s);

// Marginal readout from the clause-to-variable messages of s.
MarginalEstimate bp_marginals(const FactorGraph& g, const MessageState& s);

struct BpRun {
  MessageState messages;
  MarginalEstimate marginals;
};

BpRun bp_run(const Formula& f, unsigned rounds);

// The multiset {nu_x(+1)} after `rounds` rounds, sorted ascending.
std::vector<double> empirical_marginal_distribution(const Formula& f,
                                                    unsigned rounds);

// 2 * ceil(log2 n) + 10.
unsigned default_bp_rounds(std::uint32_t n);

}  // namespace cavity2sat

#endif  // CAVITY2SAT_BP_HPP
