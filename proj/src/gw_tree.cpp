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

#include "cavity2sat/gw_tree.hpp"

#include <cassert>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "cavity2sat/error.hpp"
#include "cavity2sat/numeric.hpp"
#include "cavity2sat/parallel.hpp"
#include "cavity2sat/rng.hpp"

namespace cavity2sat {

GWTree::GWTree(unsigned depth, std::span<const TreeEdge> edges) : depth_(depth) {
  vars_.resize(edges.size() + 1);
  for (std::size_t i = 1; i < vars_.size(); ++i) {
    const TreeEdge& e = edges[i - 1];
    if (e.parent >= i) throw InvalidArgument("tree parent must precede child");
    if (i > 1 && e.parent < vars_[i - 1].parent) {
      throw InvalidArgument("tree variables must be in breadth-first order");
    }
    if ((e.parent_sign != 1 && e.parent_sign != -1) ||
        (e.child_sign != 1 && e.child_sign != -1)) {
      throw InvalidArgument("tree signs must be +-1");
    }
    TreeVar& v = vars_[i];
    v.parent = e.parent;
    v.parent_sign = e.parent_sign;
    v.sign = e.child_sign;
    v.level = vars_[e.parent].level + 1;
    if (v.level > depth_) throw InvalidArgument("tree deeper than its depth");
  }
  index();
}

void GWTree::index() {
  for (TreeVar& v : vars_) v.child_count = 0;
  for (std::uint32_t i = static_cast<std::uint32_t>(vars_.size()); i-- > 1;) {
    TreeVar& p = vars_[vars_[i].parent];
    p.first_child = i;
    ++p.child_count;
  }
  boundary_.clear();
  for (std::uint32_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].level == depth_) boundary_.push_back(i);
  }
}

GWTree GWTree::truncate(unsigned depth) const {
  if (depth > depth_) throw InvalidArgument("truncation deeper than tree depth");
  GWTree out;
  out.depth_ = depth;
  for (const TreeVar& v : vars_) {
    if (v.level > depth) break;
    out.vars_.push_back(v);
  }
  out.index();
  return out;
}

Formula GWTree::to_formula() const {
  std::vector<Clause> clauses;
  clauses.reserve(vars_.size() - 1);
  for (std::uint32_t i = 1; i < vars_.size(); ++i) {
    const TreeVar& v = vars_[i];
    clauses.push_back(Clause{{v.parent, v.parent_sign}, {i, v.sign}});
  }
  return Formula(num_vars(), std::move(clauses));
}

GWTree sample_tree(double d, unsigned depth, std::uint64_t seed,
                   std::size_t max_nodes) {
  if (!(d >= 0.0) || !std::isfinite(d)) {
    throw InvalidArgument("density d must be a finite nonnegative number");
  }
  constexpr std::int8_t kTypes[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  CounterRng rng(seed, StreamTag::kTree);
  std::vector<TreeEdge> edges;
  std::vector<unsigned> level{0};
  for (std::size_t i = 0; i < level.size(); ++i) {
    if (level[i] >= depth) continue;
    for (const auto& type : kTypes) {
      const std::uint64_t k = rng.poisson(d / 4.0);
      for (std::uint64_t j = 0; j < k; ++j) {
        edges.push_back(TreeEdge{static_cast<std::uint32_t>(i), type[0], type[1]});
        level.push_back(level[i] + 1);
        if (2 * edges.size() + 1 > max_nodes) throw TreeTooLarge(max_nodes);
      }
    }
  }
  return GWTree(depth, edges);
}

ExtremalBoundary extremal_boundary(const GWTree& t, int target) {
  if (target != 1 && target != -1) throw InvalidArgument("target must be +-1");
  ExtremalBoundary out;
  out.sigma.resize(t.num_vars());
  out.sigma[0] = static_cast<std::int8_t>(target);
  for (std::uint32_t i = 1; i < t.num_vars(); ++i) {
    const TreeVar& v = t.var(i);
    const bool parent_satisfies = v.parent_sign == out.sigma[v.parent];
    out.sigma[i] = static_cast<std::int8_t>(parent_satisfies ? -v.sign : v.sign);
  }
  for (std::uint32_t b : t.boundary()) out.boundary.push_back(out.sigma[b]);
  return out;
}

namespace {

// Semiring policies for the two-state count recursion.
struct ExactCounts {
  using Value = BigInt;
  static Value zero() { return 0; }
  static Value one() { return 1; }
  static Value add(const Value& a, const Value& b) { return a + b; }
  static Value mul(const Value& a, const Value& b) { return a * b; }
};

// Natural logarithm of a count; -inf encodes an exact zero.
struct LogCounts {
  using Value = double;
  static Value zero() { return kNegInf; }
  static Value one() { return 0.0; }
  static Value add(Value a, Value b) { return log_add_exp(a, b); }
  static Value mul(Value a, Value b) { return a + b; }
};

template <typename S>
std::pair<typename S::Value, typename S::Value> root_pair(
    const GWTree& t, const BoundaryAssignment* boundary) {
  using V = typename S::Value;
  if (boundary != nullptr && boundary->size() != t.boundary().size()) {
    throw InvalidArgument("boundary assignment size does not match the tree boundary");
  }
  const std::uint32_t n = t.num_vars();
  std::vector<V> plus(n, S::one()), minus(n, S::one());
  if (boundary != nullptr) {
    const auto b = t.boundary();
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::int8_t value = (*boundary)[j];
      if (value != 1 && value != -1) throw InvalidArgument("boundary values must be +-1");
      (value > 0 ? minus : plus)[b[j]] = S::zero();
    }
  }
  // Children have larger indices than parents.
  for (std::uint32_t i = n; i-- > 1;) {
    const TreeVar& v = t.var(i);
    const V free = S::add(plus[i], minus[i]);
    const V forced = v.sign > 0 ? plus[i] : minus[i];
    // The parent value equal to parent_sign satisfies the clause itself.
    if (v.parent_sign > 0) {
      plus[v.parent] = S::mul(plus[v.parent], free);
      minus[v.parent] = S::mul(minus[v.parent], forced);
    } else {
      plus[v.parent] = S::mul(plus[v.parent], forced);
      minus[v.parent] = S::mul(minus[v.parent], free);
    }
  }
  return {plus[0], minus[0]};
}

double marginal_from_logs(double lp, double lm) {
  if (lp == kNegInf && lm == kNegInf) throw InfeasibleBoundary();
  if (lm == kNegInf) return 1.0;
  if (lp == kNegInf) return 0.0;
  return sigmoid(lp - lm);
}

}  // namespace

RootCounts root_counts_exact(const GWTree& t, const BoundaryAssignment* boundary) {
  auto [p, m] = root_pair<ExactCounts>(t, boundary);
  return RootCounts{std::move(p), std::move(m)};
}

double conditional_root_marginal(const GWTree& t, const BoundaryAssignment& b) {
  const auto [lp, lm] = root_pair<LogCounts>(t, &b);
  return marginal_from_logs(lp, lm);
}

double unconditional_root_marginal(const GWTree& t) {
  const auto [lp, lm] = root_pair<LogCounts>(t, nullptr);
  return marginal_from_logs(lp, lm);
}

LLVector ll_plus_uppass(const GWTree& t, std::span<const std::int8_t> sigma) {
  if (sigma.size() != t.num_vars()) {
    throw InvalidArgument("assignment size does not match the tree");
  }
  const std::uint32_t n = t.num_vars();
  LLVector eta(n);
  for (std::uint32_t i = n; i-- > 0;) {
    const TreeVar& v = t.var(i);
    if (v.level == t.depth()) {
      eta[i] = ExtendedLL{true, 0.0};
      continue;
    }
    ExtendedLL acc;
    for (std::uint32_t c = v.first_child; c < v.first_child + v.child_count; ++c) {
      const ExtendedLL& child = eta[c];
      // q = sigma_x * sign(x, a); the summand is
      // -q * ln((1 - q * tanh(eta_y / 2)) / 2).
      const int q = sigma[i] * t.var(c).parent_sign;
      if (child.infinite) {
        if (q > 0) acc.infinite = true;
        continue;
      }
      acc.value += q > 0 ? softplus(child.value) : -softplus(-child.value);
    }
    assert(!std::isnan(acc.value));
    eta[i] = acc;
  }
  return eta;
}

ImplicationTree implication_subtree(const GWTree& t, std::uint32_t x, int s) {
  if (x >= t.num_vars()) throw InvalidArgument("variable not in tree");
  if (s != 1 && s != -1) throw InvalidArgument("value must be +-1");
  ImplicationTree out;
  std::deque<std::pair<std::uint32_t, std::int8_t>> queue{{x, static_cast<std::int8_t>(s)}};
  while (!queue.empty()) {
    const auto [v, value] = queue.front();
    queue.pop_front();
    out.vars.push_back(v);
    out.values.push_back(value);
    const TreeVar& tv = t.var(v);
    for (std::uint32_t c = tv.first_child; c < tv.first_child + tv.child_count; ++c) {
      if (t.var(c).parent_sign != value) queue.emplace_back(c, t.var(c).sign);
    }
  }
  return out;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(seed ^ stream_id(StreamTag::kTrial, trial));
}

std::vector<TreeRow> tree_experiment(double d, unsigned depth,
                                     std::uint64_t trials, std::uint64_t seed) {
  std::vector<TreeRow> rows(trials * depth);
  parallel_for(trials, [&](std::size_t trial) {
    const GWTree full = sample_tree(d, depth, trial_seed(seed, trial));
    for (unsigned level = 1; level <= depth; ++level) {
      const GWTree t = full.truncate(level);
      const ExtremalBoundary plus = extremal_boundary(t, 1);
      const ExtremalBoundary minus = extremal_boundary(t, -1);
      TreeRow& row = rows[trial * depth + (level - 1)];
      row.trial = trial;
      row.level = level;
      row.unconditional = unconditional_root_marginal(t);
      row.sigma_plus = conditional_root_marginal(t, plus.boundary);
      row.sigma_minus = conditional_root_marginal(t, minus.boundary);
      row.eta_root = ll_plus_uppass(t, plus.sigma)[0].as_double();
    }
  });
  return rows;
}

}  // namespace cavity2sat
