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

#ifndef CAVITY2SAT_FORMULA_HPP
#define CAVITY2SAT_FORMULA_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cavity2sat {

using VarId = std::uint32_t;
using ClauseId = std::uint32_t;

// Signed literal; sign is +1 for x and -1 for NOT x.
struct Literal {
  VarId var = 0;
  std::int8_t sign = 1;

  // +-(var+1), the DIMACS encoding.
  std::int64_t dimacs() const {
    return sign > 0 ? static_cast<std::int64_t>(var) + 1
                    : -static_cast<std::int64_t>(var) - 1;
  }
  // True iff setting var to `value` makes the literal true.
  bool satisfied_by(int value) const { return value == sign; }

  friend bool operator==(const Literal&, const Literal&) = default;
};

struct Clause {
  Literal first;
  Literal second;

  const Literal& operator[](unsigned slot) const {
    return slot == 0 ? first : second;
  }
  friend bool operator==(const Clause&, const Clause&) = default;
};

// A 2-CNF over variables 0..n-1. Immutable once built; duplicate clauses
// are allowed and kept.
class Formula {
 public:
  Formula() = default;
  // Throws InvalidArgument if a clause repeats a variable, mentions a
  // variable >= n, or carries a sign other than +-1.
  Formula(std::uint32_t num_vars, std::vector<Clause> clauses);

  std::uint32_t num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  std::span<const Clause> clauses() const { return clauses_; }
  const Clause& clause(ClauseId a) const { return clauses_[a]; }

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  std::uint32_t num_vars_ = 0;
  std::vector<Clause> clauses_;
};

// Bipartite clause/variable graph with dense directed-edge ids: the edge
// between clause a and its slot-s variable is 2a + s. The same id indexes
// both message directions.
class FactorGraph {
 public:
  explicit FactorGraph(const Formula& f);

  std::uint32_t num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return edge_var_.size() / 2; }
  std::size_t num_edges() const { return edge_var_.size(); }

  VarId edge_var(std::size_t e) const { return edge_var_[e]; }
  int edge_sign(std::size_t e) const { return edge_sign_[e]; }
  static std::size_t edge_id(ClauseId a, unsigned slot) { return 2 * a + slot; }
  static std::size_t partner(std::size_t e) { return e ^ 1u; }

  // Edge ids incident to variable x, in increasing clause order.
  std::span<const std::uint32_t> var_edges(VarId x) const {
    return {var_edges_.data() + var_offsets_[x],
            var_offsets_[x + 1] - var_offsets_[x]};
  }
  std::size_t degree(VarId x) const {
    return var_offsets_[x + 1] - var_offsets_[x];
  }

 private:
  std::uint32_t num_vars_;
  std::vector<VarId> edge_var_;
  std::vector<std::int8_t> edge_sign_;
  std::vector<std::size_t> var_offsets_;
  std::vector<std::uint32_t> var_edges_;
};

// Values +1/-1 per variable, 0 where unassigned.
using PartialAssignment = std::vector<std::int8_t>;

// Three formulas coupled for the n -> n+1 increment: `grown` and `extended`
// both start with the clauses of `base`; every extra clause of `extended`
// contains variable base.num_vars().
struct CoupledTriple {
  Formula base;
  Formula grown;
  Formula extended;
};

// Random formula with Poisson(d n / 2) clauses, each an independent uniform
// draw from the 4 n (n-1) ordered clauses. Deterministic given seed.
Formula sample_formula(std::uint32_t n, double d, std::uint64_t seed);

CoupledTriple sample_coupled(std::uint32_t n, double d, std::uint64_t seed);

struct Component {
  std::vector<VarId> vars;       // ascending
  std::vector<ClauseId> clauses;  // ascending
};

// Connected components of the factor graph, isolated variables included,
// ordered by smallest variable.
std::vector<Component> components(const Formula& f);

// Ball of the given radius around x in the factor graph. Distances are
// graph distances, so clauses sit at odd distance.
struct Neighborhood {
  VarId center = 0;
  unsigned radius = 0;
  std::vector<VarId> vars;             // ascending original ids
  std::vector<unsigned> var_distance;  // aligned with vars
  std::vector<ClauseId> clauses;       // ascending original ids
  std::vector<VarId> frontier;         // variables at distance == radius

  // Clauses whose two variables are both inside the ball. For even radius
  // that is every clause of the ball.
  std::vector<ClauseId> complete_clauses(const Formula& f) const;
  // Sub-formula over the ball with variables renumbered in the order of
  // `vars`; clauses cut by the radius are dropped (only possible for odd
  // radius).
  Formula to_formula(const Formula& f) const;
};

Neighborhood neighborhood(const Formula& f, VarId x, unsigned radius);

// DIMACS CNF restricted to width 2.
Formula parse_dimacs(std::string_view text);
std::string emit_dimacs(const Formula& f);

// {"n": n, "clauses": [[l1, l2], ...]} with signed 1-based literals.
std::string formula_to_json(const Formula& f);
Formula formula_from_json(std::string_view text);

}  // namespace cavity2sat

#endif  // CAVITY2SAT_FORMULA_HPP
