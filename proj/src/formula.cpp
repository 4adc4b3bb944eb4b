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

#include "cavity2sat/formula.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>

#include "cavity2sat/error.hpp"
#include "cavity2sat/rng.hpp"
#include "json.hpp"

namespace cavity2sat {

Formula::Formula(std::uint32_t num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
  for (std::size_t a = 0; a < clauses_.size(); ++a) {
    const Clause& c = clauses_[a];
    for (unsigned s = 0; s < 2; ++s) {
      if (c[s].var >= num_vars_) {
        throw InvalidArgument("clause " + std::to_string(a) +
                              ": variable index " + std::to_string(c[s].var) +
                              " out of range");
      }
      if (c[s].sign != 1 && c[s].sign != -1) {
        throw InvalidArgument("clause " + std::to_string(a) +
                              ": sign must be +1 or -1");
      }
    }
    if (c.first.var == c.second.var) {
      throw InvalidArgument("clause " + std::to_string(a) +
                            ": repeated variable");
    }
  }
}

FactorGraph::FactorGraph(const Formula& f) : num_vars_(f.num_vars()) {
  const std::size_t m = f.num_clauses();
  edge_var_.resize(2 * m);
  edge_sign_.resize(2 * m);
  var_offsets_.assign(num_vars_ + 1, 0);
  for (std::size_t a = 0; a < m; ++a) {
    const Clause& c = f.clause(static_cast<ClauseId>(a));
    for (unsigned s = 0; s < 2; ++s) {
      edge_var_[2 * a + s] = c[s].var;
      edge_sign_[2 * a + s] = c[s].sign;
      ++var_offsets_[c[s].var + 1];
    }
  }
  std::partial_sum(var_offsets_.begin(), var_offsets_.end(),
                   var_offsets_.begin());
  var_edges_.resize(2 * m);
  std::vector<std::size_t> fill(var_offsets_.begin(), var_offsets_.end() - 1);
  for (std::size_t e = 0; e < 2 * m; ++e) {
    var_edges_[fill[edge_var_[e]]++] = static_cast<std::uint32_t>(e);
  }
}

namespace {

void check_ensemble_args(std::uint32_t n, double d) {
  if (!(d >= 0.0) || !std::isfinite(d)) {
    throw InvalidArgument("density d must be a finite nonnegative number");
  }
  if (n == 0) throw InvalidArgument("n must be positive");
  if (n < 2 && d > 0.0) {
    throw InvalidArgument("n must be at least 2 when d > 0");
  }
}

Clause uniform_clause(CounterRng& rng, std::uint32_t n) {
  const auto v1 = static_cast<VarId>(rng.uniform_index(n));
  auto v2 = static_cast<VarId>(rng.uniform_index(n - 1));
  if (v2 >= v1) ++v2;
  const auto s1 = static_cast<std::int8_t>(rng.sign());
  const auto s2 = static_cast<std::int8_t>(rng.sign());
  return Clause{{v1, s1}, {v2, s2}};
}

}  // namespace

Formula sample_formula(std::uint32_t n, double d, std::uint64_t seed) {
  check_ensemble_args(n, d);
  CounterRng rng(seed, StreamTag::kFormula);
  const std::uint64_t m = rng.poisson(d * n / 2.0);
  std::vector<Clause> clauses;
  clauses.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) clauses.push_back(uniform_clause(rng, n));
  return Formula(n, std::move(clauses));
}

CoupledTriple sample_coupled(std::uint32_t n, double d, std::uint64_t seed) {
  check_ensemble_args(n, d);
  if (n < 2) throw InvalidArgument("n must be at least 2");
  CounterRng rng(seed, StreamTag::kCoupled);
  const std::uint64_t m_base = rng.poisson(std::max(0.0, d * n / 2.0 - d / 2.0));
  const std::uint64_t m_grow = rng.poisson(d / 2.0);
  const std::uint64_t m_ext = rng.poisson(d);

  std::vector<Clause> base;
  base.reserve(m_base);
  for (std::uint64_t i = 0; i < m_base; ++i) base.push_back(uniform_clause(rng, n));

  std::vector<Clause> grown = base;
  for (std::uint64_t i = 0; i < m_grow; ++i) grown.push_back(uniform_clause(rng, n));

  // One of the 8n clauses joining the new variable n to an old one: the
  // new variable takes either slot, the old one is uniform, signs uniform.
  std::vector<Clause> extended = base;
  for (std::uint64_t i = 0; i < m_ext; ++i) {
    const bool new_first = rng.sign() > 0;
    const auto other = static_cast<VarId>(rng.uniform_index(n));
    const auto s_new = static_cast<std::int8_t>(rng.sign());
    const auto s_other = static_cast<std::int8_t>(rng.sign());
    const Literal fresh{n, s_new};
    const Literal old{other, s_other};
    extended.push_back(new_first ? Clause{fresh, old} : Clause{old, fresh});
  }

  return CoupledTriple{Formula(n, std::move(base)), Formula(n, std::move(grown)),
                       Formula(n + 1, std::move(extended))};
}

std::vector<Component> components(const Formula& f) {
  const std::uint32_t n = f.num_vars();
  std::vector<VarId> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](VarId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const Clause& c : f.clauses()) {
    VarId a = find(c.first.var);
    VarId b = find(c.second.var);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    parent[b] = a;
  }

  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index_of_root(n, kUnset);
  std::vector<Component> out;
  std::vector<std::uint32_t> comp_of(n);
  for (VarId x = 0; x < n; ++x) {
    const VarId r = find(x);
    if (index_of_root[r] == kUnset) {
      index_of_root[r] = static_cast<std::uint32_t>(out.size());
      out.emplace_back();
    }
    comp_of[x] = index_of_root[r];
    out[comp_of[x]].vars.push_back(x);
  }
  for (ClauseId a = 0; a < f.num_clauses(); ++a) {
    out[comp_of[f.clause(a).first.var]].clauses.push_back(a);
  }
  return out;
}

std::vector<ClauseId> Neighborhood::complete_clauses(const Formula& f) const {
  std::vector<ClauseId> out;
  for (ClauseId a : clauses) {
    const Clause& c = f.clause(a);
    if (std::binary_search(vars.begin(), vars.end(), c.first.var) &&
        std::binary_search(vars.begin(), vars.end(), c.second.var)) {
      out.push_back(a);
    }
  }
  return out;
}

Formula Neighborhood::to_formula(const Formula& f) const {
  auto local = [&](VarId v) {
    return static_cast<VarId>(
        std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
  };
  std::vector<Clause> out;
  for (ClauseId a : complete_clauses(f)) {
    const Clause& c = f.clause(a);
    out.push_back(Clause{{local(c.first.var), c.first.sign},
                         {local(c.second.var), c.second.sign}});
  }
  return Formula(static_cast<std::uint32_t>(vars.size()), std::move(out));
}

Neighborhood neighborhood(const Formula& f, VarId x, unsigned radius) {
  if (x >= f.num_vars()) throw InvalidArgument("variable out of range");
  constexpr unsigned kUnseen = std::numeric_limits<unsigned>::max();
  std::vector<unsigned> var_dist(f.num_vars(), kUnseen);
  std::vector<unsigned> clause_dist(f.num_clauses(), kUnseen);
  const FactorGraph g(f);

  std::deque<VarId> queue{x};
  var_dist[x] = 0;
  while (!queue.empty()) {
    const VarId v = queue.front();
    queue.pop_front();
    const unsigned dv = var_dist[v];
    if (dv + 1 > radius) continue;
    for (std::uint32_t e : g.var_edges(v)) {
      const ClauseId a = static_cast<ClauseId>(e / 2);
      if (clause_dist[a] != kUnseen) continue;
      clause_dist[a] = dv + 1;
      if (dv + 2 > radius) continue;
      const VarId w = g.edge_var(FactorGraph::partner(e));
      if (var_dist[w] == kUnseen) {
        var_dist[w] = dv + 2;
        queue.push_back(w);
      }
    }
  }

  Neighborhood nb;
  nb.center = x;
  nb.radius = radius;
  for (VarId v = 0; v < f.num_vars(); ++v) {
    if (var_dist[v] == kUnseen) continue;
    nb.vars.push_back(v);
    nb.var_distance.push_back(var_dist[v]);
    if (var_dist[v] == radius) nb.frontier.push_back(v);
  }
  for (ClauseId a = 0; a < f.num_clauses(); ++a) {
    if (clause_dist[a] != kUnseen) nb.clauses.push_back(a);
  }
  return nb;
}

namespace {

bool parse_int(std::string_view token, std::int64_t& out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

Formula parse_dimacs(std::string_view text) {
  bool have_header = false;
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::vector<Clause> clauses;
  std::vector<std::int64_t> pending;
  std::size_t pending_line = 0;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens[0][0] == 'c') continue;
    if (tokens[0] == "%") break;
    if (tokens[0] == "p") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      if (tokens.size() != 4 || tokens[1] != "cnf" ||
          !parse_int(tokens[2], n) || !parse_int(tokens[3], m) || n < 0 ||
          m < 0 || n > std::numeric_limits<std::uint32_t>::max()) {
        throw ParseError(line_no, "malformed header, expected 'p cnf <n> <m>'");
      }
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "clause before 'p cnf' header");

    for (std::string_view tok : tokens) {
      std::int64_t lit = 0;
      if (!parse_int(tok, lit)) {
        throw ParseError(line_no, "invalid literal '" + std::string(tok) + "'");
      }
      if (pending.empty()) pending_line = line_no;
      if (lit != 0) {
        if (lit > n || -lit > n) {
          throw ParseError(line_no, "variable index " + std::to_string(lit) +
                                        " out of range");
        }
        pending.push_back(lit);
        continue;
      }
      if (pending.size() != 2) {
        throw ParseError(pending_line, "clause width " +
                                           std::to_string(pending.size()) +
                                           " is not 2");
      }
      if (pending[0] == pending[1] || pending[0] == -pending[1]) {
        throw ParseError(pending_line, "repeated variable");
      }
      auto to_lit = [](std::int64_t l) {
        return Literal{static_cast<VarId>((l > 0 ? l : -l) - 1),
                       static_cast<std::int8_t>(l > 0 ? 1 : -1)};
      };
      clauses.push_back(Clause{to_lit(pending[0]), to_lit(pending[1])});
      pending.clear();
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'p cnf' header");
  if (!pending.empty()) throw ParseError(pending_line, "unterminated clause");
  if (static_cast<std::int64_t>(clauses.size()) != m) {
    throw ParseError(line_no, "header declares " + std::to_string(m) +
                                  " clauses, found " +
                                  std::to_string(clauses.size()));
  }
  return Formula(static_cast<std::uint32_t>(n), std::move(clauses));
}

std::string emit_dimacs(const Formula& f) {
  std::string out = "p cnf " + std::to_string(f.num_vars()) + " " +
                    std::to_string(f.num_clauses()) + "\n";
  for (const Clause& c : f.clauses()) {
    out += std::to_string(c.first.dimacs());
    out += ' ';
    out += std::to_string(c.second.dimacs());
    out += " 0\n";
  }
  return out;
}

std::string formula_to_json(const Formula& f) {
  nlohmann::json clauses = nlohmann::json::array();
  for (const Clause& c : f.clauses()) {
    clauses.push_back({c.first.dimacs(), c.second.dimacs()});
  }
  return nlohmann::json{{"n", f.num_vars()}, {"clauses", clauses}}.dump();
}

Formula formula_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_unsigned() ||
      !j.contains("clauses") || !j["clauses"].is_array()) {
    throw ParseError(0, "expected {\"n\": int, \"clauses\": [[l1, l2], ...]}");
  }
  const auto n = j["n"].get<std::uint64_t>();
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw ParseError(0, "n too large");
  }
  std::vector<Clause> clauses;
  for (const auto& c : j["clauses"]) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() ||
        !c[1].is_number_integer()) {
      throw ParseError(0, "clause width is not 2");
    }
    std::array<Literal, 2> lits;
    for (unsigned s = 0; s < 2; ++s) {
      const auto l = c[s].get<std::int64_t>();
      const std::int64_t v = l > 0 ? l : -l;
      if (l == 0 || v > static_cast<std::int64_t>(n)) {
        throw ParseError(0, "variable index " + std::to_string(l) + " out of range");
      }
      lits[s] = Literal{static_cast<VarId>(v - 1),
                        static_cast<std::int8_t>(l > 0 ? 1 : -1)};
    }
    if (lits[0].var == lits[1].var) throw ParseError(0, "repeated variable");
    clauses.push_back(Clause{lits[0], lits[1]});
  }
  return Formula(static_cast<std::uint32_t>(n), std::move(clauses));
}

}  // namespace cavity2sat
