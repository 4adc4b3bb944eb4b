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

#include "cavity2sat/ucp.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <string>

#include "cavity2sat/error.hpp"

namespace cavity2sat {
namespace {

void check_assignment(const Formula& f, const PartialAssignment& chi) {
  if (chi.size() != f.num_vars()) {
    throw InvalidArgument("assignment size does not match the formula");
  }
  for (std::int8_t v : chi) {
    if (v < -1 || v > 1) throw InvalidArgument("assignment values must be -1, 0 or +1");
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

UcpResult unit_clause_propagate(const Formula& f, const PartialAssignment& chi,
                                QueueOrder order) {
  check_assignment(f, chi);
  const FactorGraph g(f);
  UcpResult out;
  out.imposed = chi;
  std::deque<VarId> queue;
  for (VarId x = 0; x < f.num_vars(); ++x) {
    if (chi[x] != 0) queue.push_back(x);
  }
  while (!queue.empty()) {
    VarId z;
    if (order == QueueOrder::kFifo) {
      z = queue.front();
      queue.pop_front();
    } else {
      z = queue.back();
      queue.pop_back();
    }
    for (std::uint32_t e : g.var_edges(z)) {
      if (out.imposed[z] != -g.edge_sign(e)) continue;
      const std::size_t other = FactorGraph::partner(e);
      const VarId y = g.edge_var(other);
      if (out.imposed[y] != 0) continue;
      out.imposed[y] = static_cast<std::int8_t>(g.edge_sign(other));
      queue.push_back(y);
    }
  }
  for (const Clause& c : f.clauses()) {
    if (out.imposed[c.first.var] == -c.first.sign &&
        out.imposed[c.second.var] == -c.second.sign) {
      out.contradiction = true;
      break;
    }
  }
  for (VarId x = 0; x < f.num_vars(); ++x) {
    if (out.imposed[x] != 0) out.closure.push_back(x);
  }
  out.i_chi = out.contradiction ? f.num_vars()
                                : static_cast<std::uint32_t>(out.closure.size());
  return out;
}

std::uint32_t a_chi(const Formula& f, const PartialAssignment& chi) {
  check_assignment(f, chi);
  std::uint32_t best = unit_clause_propagate(f, chi).i_chi;
  PartialAssignment flipped = chi;
  for (VarId x = 0; x < f.num_vars(); ++x) {
    if (chi[x] == 0) continue;
    flipped[x] = static_cast<std::int8_t>(-chi[x]);
    best = std::min(best, unit_clause_propagate(f, flipped).i_chi);
    flipped[x] = chi[x];
  }
  return best;
}

FactCheck check_fact_uc(const Formula& f, const PartialAssignment& chi,
                        std::uint32_t cap) {
  FactCheck out;
  out.i_chi = unit_clause_propagate(f, chi).i_chi;
  out.z = count_exact(f, cap).z;
  out.z_chi = count_conditional(f, chi, cap).z;
  const BigInt rhs = (BigInt(1) << out.i_chi) * (out.z_chi > 0 ? out.z_chi : BigInt(1));
  out.holds = out.z <= rhs;
  return out;
}

PartialAssignment parse_impose(std::string_view text, std::uint32_t n) {
  PartialAssignment chi(n, 0);
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("impose item '" + std::string(item) + "' lacks '='");
    }
    std::uint64_t var = 0;
    const std::string_view lhs = trim(item.substr(0, eq));
    auto [p, ec] = std::from_chars(lhs.data(), lhs.data() + lhs.size(), var);
    if (ec != std::errc() || p != lhs.data() + lhs.size() || var == 0 || var > n) {
      throw InvalidArgument("impose variable '" + std::string(lhs) + "' out of range");
    }
    const std::string_view rhs = trim(item.substr(eq + 1));
    int value = 0;
    if (rhs == "+1" || rhs == "1" || rhs == "+") {
      value = 1;
    } else if (rhs == "-1" || rhs == "-") {
      value = -1;
    } else {
      throw InvalidArgument("impose value '" + std::string(rhs) + "' must be +1 or -1");
    }
    chi[var - 1] = static_cast<std::int8_t>(value);
  }
  return chi;
}

}  // namespace cavity2sat
