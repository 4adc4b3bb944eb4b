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

#include "cavity2sat/exact_count.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "cavity2sat/error.hpp"
#include "cavity2sat/numeric.hpp"
#include "cavity2sat/parallel.hpp"

namespace cavity2sat {
namespace {

// Bit j of lane pattern i is bit i of j: the six low variables of a
// component are enumerated inside one 64-bit word.
constexpr std::uint64_t kLanePattern[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
constexpr unsigned kLaneVars = 6;

struct LocalLit {
  std::uint32_t var;
  bool positive;
};

struct LocalClause {
  LocalLit a;
  LocalLit b;
};

// A component renumbered so that the highest-degree variables occupy the
// lane positions 0..5.
struct LocalProblem {
  std::uint32_t k = 0;
  std::vector<VarId> global;  // local index -> original variable
  std::vector<LocalClause> clauses;
  std::vector<std::int8_t> clamp;  // per local variable, 0 = free
};

LocalProblem localize(const Formula& f, const Component& comp,
                      const PartialAssignment* chi) {
  LocalProblem p;
  p.k = static_cast<std::uint32_t>(comp.vars.size());
  std::vector<std::uint32_t> degree(p.k, 0);
  auto pos = [&](VarId v) {
    return static_cast<std::uint32_t>(
        std::lower_bound(comp.vars.begin(), comp.vars.end(), v) -
        comp.vars.begin());
  };
  for (ClauseId a : comp.clauses) {
    ++degree[pos(f.clause(a).first.var)];
    ++degree[pos(f.clause(a).second.var)];
  }
  std::vector<std::uint32_t> order(p.k);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    return degree[x] > degree[y];
  });
  std::vector<std::uint32_t> local_of(p.k);
  p.global.resize(p.k);
  for (std::uint32_t i = 0; i < p.k; ++i) {
    local_of[order[i]] = i;
    p.global[i] = comp.vars[order[i]];
  }
  p.clauses.reserve(comp.clauses.size());
  for (ClauseId a : comp.clauses) {
    const Clause& c = f.clause(a);
    p.clauses.push_back(LocalClause{{local_of[pos(c.first.var)], c.first.sign > 0},
                                    {local_of[pos(c.second.var)], c.second.sign > 0}});
  }
  p.clamp.assign(p.k, 0);
  if (chi != nullptr) {
    for (std::uint32_t i = 0; i < p.k; ++i) p.clamp[i] = (*chi)[p.global[i]];
  }
  return p;
}

struct Enumeration {
  std::uint64_t count = 0;
  std::vector<std::uint64_t> positive;   // per local var, when requested
  std::vector<std::uint64_t> histogram;  // by #violated, when requested
};

class Enumerator {
 public:
  explicit Enumerator(const LocalProblem& p) : p_(p) {
    low_ = std::min(p.k, kLaneVars);
    valid_ = low_ == kLaneVars ? ~0ull : ((1ull << (1u << low_)) - 1);
    for (const LocalClause& c : p.clauses) {
      const bool a_low = c.a.var < low_;
      const bool b_low = c.b.var < low_;
      if (a_low && b_low) {
        low_clauses_.push_back(c);
      } else if (a_low || b_low) {
        mixed_.push_back(a_low ? LocalClause{c.b, c.a} : c);  // high first
      } else {
        high_.push_back(c);
      }
    }
  }

  Enumeration run(bool want_marginals, bool want_histogram) const {
    Enumeration out;
    if (want_marginals) out.positive.assign(p_.k, 0);
    const std::uint64_t outer = 1ull << (p_.k - low_);

    std::uint64_t lane_mask = valid_;
    for (std::uint32_t i = 0; i < low_; ++i) {
      if (p_.clamp[i] != 0) lane_mask &= p_.clamp[i] > 0 ? kLanePattern[i] : ~kLanePattern[i];
    }
    std::uint64_t low_sat = lane_mask;
    for (const LocalClause& c : low_clauses_) low_sat &= lit(c.a) | lit(c.b);

    if (!want_histogram) {
      for (std::uint64_t h = 0; h < outer; ++h) {
        if (!clamps_ok(h)) continue;
        std::uint64_t sat = low_sat;
        for (const LocalClause& c : high_) {
          if (!high_true(c.a, h) && !high_true(c.b, h)) {
            sat = 0;
            break;
          }
        }
        if (sat == 0) continue;
        for (const LocalClause& c : mixed_) {
          if (!high_true(c.a, h)) sat &= lit(c.b);
        }
        if (sat == 0) continue;
        const auto pc = static_cast<std::uint64_t>(std::popcount(sat));
        out.count += pc;
        if (want_marginals) {
          for (std::uint32_t i = 0; i < low_; ++i) {
            out.positive[i] += static_cast<std::uint64_t>(std::popcount(sat & kLanePattern[i]));
          }
          for (std::uint32_t i = low_; i < p_.k; ++i) {
            if ((h >> (i - low_)) & 1u) out.positive[i] += pc;
          }
        }
      }
      return out;
    }

    // Violation counts per lane kept as a bit-sliced binary counter.
    const std::size_t m = p_.clauses.size();
    const unsigned planes = std::max(1u, static_cast<unsigned>(std::bit_width(m)));
    std::vector<std::uint64_t> base(planes, 0);
    for (const LocalClause& c : low_clauses_) add(base, ~(lit(c.a) | lit(c.b)));
    out.histogram.assign(m + 1, 0);
    std::vector<std::uint64_t> counter(planes);
    for (std::uint64_t h = 0; h < outer; ++h) {
      if (!clamps_ok(h)) continue;
      std::size_t offset = 0;
      for (const LocalClause& c : high_) {
        if (!high_true(c.a, h) && !high_true(c.b, h)) ++offset;
      }
      counter = base;
      std::size_t mixed_active = 0;
      for (const LocalClause& c : mixed_) {
        if (!high_true(c.a, h)) {
          add(counter, ~lit(c.b));
          ++mixed_active;
        }
      }
      const std::size_t max_value = low_clauses_.size() + mixed_active;
      std::uint64_t remaining = lane_mask;
      for (std::size_t value = 0; value <= max_value && remaining != 0; ++value) {
        std::uint64_t match = remaining;
        for (unsigned b = 0; b < planes; ++b) {
          match &= ((value >> b) & 1u) ? counter[b] : ~counter[b];
        }
        if (match == 0) continue;
        out.histogram[value + offset] += static_cast<std::uint64_t>(std::popcount(match));
        remaining &= ~match;
      }
    }
    out.count = out.histogram[0];
    return out;
  }

 private:
  std::uint64_t lit(const LocalLit& l) const {
    return l.positive ? kLanePattern[l.var] : ~kLanePattern[l.var];
  }
  bool high_true(const LocalLit& l, std::uint64_t h) const {
    const bool value = (h >> (l.var - low_)) & 1u;
    return value == l.positive;
  }
  bool clamps_ok(std::uint64_t h) const {
    for (std::uint32_t i = low_; i < p_.k; ++i) {
      if (p_.clamp[i] == 0) continue;
      const bool value = (h >> (i - low_)) & 1u;
      if (value != (p_.clamp[i] > 0)) return false;
    }
    return true;
  }
  static void add(std::vector<std::uint64_t>& counter, std::uint64_t bits) {
    for (std::uint64_t& plane : counter) {
      const std::uint64_t carry = plane & bits;
      plane ^= bits;
      bits = carry;
      if (bits == 0) return;
    }
  }

  const LocalProblem& p_;
  std::uint32_t low_ = 0;
  std::uint64_t valid_ = 0;
  std::vector<LocalClause> low_clauses_;
  std::vector<LocalClause> mixed_;  // high-index literal stored first
  std::vector<LocalClause> high_;
};

void check_cap(std::uint32_t cap) {
  if (cap == 0 || cap > kMaxCap) {
    throw InvalidArgument("component cap must be in [1, " + std::to_string(kMaxCap) + "]");
  }
}

// Components with at least one clause (isolated variables are handled in
// closed form); throws on the first component over the cap, in component
// order.
std::vector<std::size_t> clause_components(const std::vector<Component>& comps,
                                           std::uint32_t cap) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].clauses.empty()) continue;
    if (comps[i].vars.size() > cap) {
      throw ComponentTooLarge(i, comps[i].vars.size(), cap);
    }
    out.push_back(i);
  }
  return out;
}

// Components are enumerated in parallel; each writes its own slot.
std::vector<Enumeration> enumerate_all(const Formula& f,
                                       const std::vector<Component>& comps,
                                       const std::vector<std::size_t>& which,
                                       const PartialAssignment* chi,
                                       bool want_marginals, bool want_histogram,
                                       std::vector<LocalProblem>* problems = nullptr) {
  std::vector<LocalProblem> local(which.size());
  for (std::size_t j = 0; j < which.size(); ++j) {
    local[j] = localize(f, comps[which[j]], chi);
  }
  std::vector<Enumeration> out(which.size());
  parallel_for(which.size(), [&](std::size_t j) {
    out[j] = Enumerator(local[j]).run(want_marginals, want_histogram);
  });
  if (problems != nullptr) *problems = std::move(local);
  return out;
}

CountResult finish(BigInt z) {
  CountResult r;
  r.log_z = log_count(z);
  r.z = std::move(z);
  return r;
}

}  // namespace

double log_count(const BigInt& z) {
  if (z <= 1) return 0.0;
  const std::size_t top = boost::multiprecision::msb(z);
  if (top < 64) {
    return static_cast<double>(std::log(static_cast<long double>(z.convert_to<std::uint64_t>())));
  }
  const std::size_t shift = top - 63;
  const std::uint64_t mantissa = static_cast<BigInt>(z >> shift).convert_to<std::uint64_t>();
  const long double value = std::log(static_cast<long double>(mantissa)) +
                            static_cast<long double>(shift) * 0.693147180559945309417232121458176568L;
  return static_cast<double>(value);
}

CountResult count_exact(const Formula& f, std::uint32_t cap) {
  return count_conditional(f, PartialAssignment(f.num_vars(), 0), cap);
}

CountResult count_conditional(const Formula& f, const PartialAssignment& chi,
                              std::uint32_t cap) {
  check_cap(cap);
  if (chi.size() != f.num_vars()) {
    throw InvalidArgument("partial assignment size does not match variable count");
  }
  for (std::int8_t v : chi) {
    if (v != 0 && v != 1 && v != -1) throw InvalidArgument("assignment values must be +-1");
  }
  const auto comps = components(f);
  const auto which = clause_components(comps, cap);

  std::size_t free_isolated = 0;
  for (const Component& c : comps) {
    if (c.clauses.empty() && chi[c.vars.front()] == 0) ++free_isolated;
  }
  const auto counts = enumerate_all(f, comps, which, &chi, false, false);
  BigInt z = 1;
  for (const Enumeration& e : counts) {
    if (e.count == 0) return finish(0);
    z *= e.count;
  }
  z <<= free_isolated;
  return finish(std::move(z));
}

std::vector<double> marginals_exact(const Formula& f, std::uint32_t cap) {
  check_cap(cap);
  const auto comps = components(f);
  const auto which = clause_components(comps, cap);
  std::vector<LocalProblem> problems;
  const auto counts = enumerate_all(f, comps, which, nullptr, true, false, &problems);
  std::vector<double> p(f.num_vars(), 0.5);
  for (std::size_t j = 0; j < which.size(); ++j) {
    const Enumeration& e = counts[j];
    if (e.count == 0) throw Unsatisfiable();
    const double z = static_cast<double>(e.count);
    for (std::uint32_t i = 0; i < problems[j].k; ++i) {
      p[problems[j].global[i]] = static_cast<double>(e.positive[i]) / z;
    }
  }
  return p;
}

double soft_partition(const Formula& f, double beta, std::uint32_t cap) {
  check_cap(cap);
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw InvalidArgument("beta must be a finite nonnegative number");
  }
  const auto comps = components(f);
  const auto which = clause_components(comps, cap);
  const auto hists = enumerate_all(f, comps, which, nullptr, false, true);

  double total = 0.0;
  std::size_t isolated = 0;
  for (const Component& c : comps) {
    if (c.clauses.empty()) ++isolated;
  }
  // Fixed reduction order: component order.
  for (const Enumeration& e : hists) {
    double acc = kNegInf;
    for (std::size_t v = 0; v < e.histogram.size(); ++v) {
      if (e.histogram[v] == 0) continue;
      acc = log_add_exp(acc, std::log(static_cast<double>(e.histogram[v])) -
                                 beta * static_cast<double>(v));
    }
    total += acc;
  }
  return total + static_cast<double>(isolated) * kLn2;
}

}  // namespace cavity2sat
