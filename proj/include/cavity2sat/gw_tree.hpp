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

#ifndef CAVITY2SAT_GW_TREE_HPP
#define CAVITY2SAT_GW_TREE_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "cavity2sat/exact_count.hpp"
#include "cavity2sat/formula.hpp"

namespace cavity2sat {

inline constexpr std::uint32_t kNoParent = std::numeric_limits<std::uint32_t>::max();

// A non-root variable together with the clause joining it to its parent.
struct TreeEdge {
  std::uint32_t parent = 0;
  std::int8_t parent_sign = 1;  // sign of the parent variable in the clause
  std::int8_t child_sign = 1;   // sign of this variable in the clause
};

struct TreeVar {
  std::uint32_t parent = kNoParent;
  std::int8_t parent_sign = 1;
  std::int8_t sign = 1;
  std::uint32_t level = 0;  // graph distance to the root is 2 * level
  std::uint32_t first_child = 0;
  std::uint32_t child_count = 0;
};

// Alternating variable/clause tree stored as its variables in
// breadth-first order; each non-root variable carries its parent clause.
// Children of a variable are contiguous and every level is a contiguous
// range, so the vars at the truncation depth form the suffix of the array.
class GWTree {
 public:
  // `edges[i]` describes variable i + 1; parents must be nondecreasing and
  // precede their children. `depth` is the truncation level (variables at
  // graph distance 2 * depth form the boundary) and must be >= every level.
  GWTree(unsigned depth, std::span<const TreeEdge> edges);

  unsigned depth() const { return depth_; }
  std::uint32_t num_vars() const { return static_cast<std::uint32_t>(vars_.size()); }
  // Variable plus clause nodes.
  std::size_t num_nodes() const { return 2 * vars_.size() - 1; }
  const TreeVar& var(std::uint32_t i) const { return vars_[i]; }
  std::span<const TreeVar> vars() const { return vars_; }
  // Deepest level that contains a variable.
  unsigned height() const { return vars_.back().level; }

  // Variables at level depth(), ascending.
  std::span<const std::uint32_t> boundary() const { return boundary_; }

  // Same tree cut at a smaller depth.
  GWTree truncate(unsigned depth) const;

  // Clause i - 1 joins variable i to its parent; variable ids are kept.
  Formula to_formula() const;

 private:
  GWTree() = default;
  void index();

  unsigned depth_ = 0;
  std::vector<TreeVar> vars_;
  std::vector<std::uint32_t> boundary_;
};

inline constexpr std::size_t kMaxTreeNodes = 10'000'000;

// Five-type Galton-Watson tree: every variable above the truncation level
// spawns Poisson(d/4) clauses of each sign type (++, +-, -+, --), each with
// one child variable. Levels are generated in order from one stream, so
// sample_tree(d, l, s) equals sample_tree(d, L, s).truncate(l) for l <= L.
GWTree sample_tree(double d, unsigned depth, std::uint64_t seed,
                   std::size_t max_nodes = kMaxTreeNodes);

// +-1 per boundary variable, aligned with GWTree::boundary().
using BoundaryAssignment = std::vector<std::int8_t>;

struct ExtremalBoundary {
  std::vector<std::int8_t> sigma;  // full assignment, satisfies the tree
  BoundaryAssignment boundary;
};

// Top-down construction pushing the root towards `target`: a child is set
// to not satisfy its parent clause if the parent's value already does, and
// to satisfy it otherwise.
ExtremalBoundary extremal_boundary(const GWTree& t, int target);

struct RootCounts {
  BigInt plus;   // satisfying extensions with root = +1
  BigInt minus;  // ... with root = -1
};

// Exact counts over the tree formula, boundary clamped when given.
RootCounts root_counts_exact(const GWTree& t, const BoundaryAssignment* boundary);

// mu(sigma_root = 1 | sigma_boundary = b) by a log-space two-state dynamic
// program. Throws InfeasibleBoundary when no satisfying assignment
// agrees with b.
double conditional_root_marginal(const GWTree& t, const BoundaryAssignment& b);

double unconditional_root_marginal(const GWTree& t);

// Log-likelihood value in (-inf, +inf]; +inf is carried as a flag.
struct ExtendedLL {
  bool infinite = false;
  double value = 0.0;

  double as_double() const {
    return infinite ? std::numeric_limits<double>::infinity() : value;
  }
};

using LLVector = std::vector<ExtendedLL>;

// Bottom-up pass from the clamped boundary: eta_x is the log-ratio of the
// count of subtree solutions with x = sigma_x to those with x = -sigma_x.
LLVector ll_plus_uppass(const GWTree& t, std::span<const std::int8_t> sigma);

struct ImplicationTree {
  std::vector<std::uint32_t> vars;  // reached variables in discovery order
  std::vector<std::int8_t> values;  // forced values, aligned with vars
  std::size_t count() const { return vars.size(); }
};

// Forced values below x once x := s: descend through child clauses that s
// does not satisfy and force the child to satisfy them.
ImplicationTree implication_subtree(const GWTree& t, std::uint32_t x, int s);

struct TreeRow {
  std::uint64_t trial = 0;
  unsigned level = 0;
  double unconditional = 0.0;
  double sigma_plus = 0.0;
  double sigma_minus = 0.0;
  double eta_root = 0.0;  // +inf when the clamp forces the root
};

// For each trial one tree of depth `depth`, evaluated at every truncation
// level 1..depth. Rows ordered by (trial, level).
std::vector<TreeRow> tree_experiment(double d, unsigned depth,
                                     std::uint64_t trials, std::uint64_t seed);

// Per-trial seed used by tree_experiment.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

}  // namespace cavity2sat

#endif  // CAVITY2SAT_GW_TREE_HPP
