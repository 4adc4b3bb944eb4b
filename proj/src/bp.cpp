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

#include "cavity2sat/bp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "cavity2sat/numeric.hpp"
#include "cavity2sat/parallel.hpp"

namespace cavity2sat {
namespace {

constexpr std::size_t kGrain = 8192;

// Product of message values in log form; exact zeros are counted instead of
// being folded into the logarithm.
struct LogProduct {
  double log = 0.0;
  std::uint32_t zeros = 0;

  void mul(double v) {
    if (v == 0.0) {
      ++zeros;
    } else {
      log += std::log(v);
    }
  }
  LogProduct operator*(const LogProduct& o) const {
    return LogProduct{log + o.log, zeros + o.zeros};
  }
};

// p(+1) / (p(+1) + p(-1)), or 1/2 if both products vanish.
double normalise(const LogProduct& plus, const LogProduct& minus) {
  if (plus.zeros > 0 && minus.zeros > 0) return 0.5;
  if (plus.zeros > 0) return 0.0;
  if (minus.zeros > 0) return 1.0;
  return sigmoid(plus.log - minus.log);
}

template <typename Body>
void for_each_block(std::size_t n, Body&& body) {
  parallel_for(chunk_count(n, kGrain), [&](std::size_t c) {
    const std::size_t lo = c * kGrain;
    const std::size_t hi = std::min(n, lo + kGrain);
    for (std::size_t i = lo; i < hi; ++i) body(i);
  });
}

}  // namespace

MessageState init_messages(const FactorGraph& g) {
  MessageState s;
  s.clause_to_var.assign(g.num_edges(), 0.5);
  s.var_to_clause.assign(g.num_edges(), 0.5);
  s.round = 0;
  return s;
}

MessageState bp_step(const FactorGraph& g, const MessageState& s) {
  MessageState next;
  next.round = s.round + 1;
  next.clause_to_var.resize(g.num_edges());
  next.var_to_clause.resize(g.num_edges());

  // nu_{a->x}(+1) = (1 - 1{r != +1} nu_{y->a}(-s)) / (1 + nu_{y->a}(s)).
  for_each_block(g.num_edges(), [&](std::size_t e) {
    const std::size_t other = FactorGraph::partner(e);
    const double y_plus = s.var_to_clause[other];
    const double y_sat = g.edge_sign(other) > 0 ? y_plus : 1.0 - y_plus;
    const double y_unsat = 1.0 - y_sat;
    const double numer = g.edge_sign(e) > 0 ? 1.0 : 1.0 - y_unsat;
    next.clause_to_var[e] = numer / (1.0 + y_sat);
  });

  // nu_{x->a} from all other incoming clause messages; prefix and suffix
  // products give each exclusion in linear time.
  for_each_block(g.num_vars(), [&](std::size_t xi) {
    const auto edges = g.var_edges(static_cast<VarId>(xi));
    const std::size_t deg = edges.size();
    if (deg == 0) return;
    std::vector<LogProduct> prefix_p(deg + 1), prefix_m(deg + 1);
    for (std::size_t i = 0; i < deg; ++i) {
      const double v = next.clause_to_var[edges[i]];
      prefix_p[i + 1] = prefix_p[i];
      prefix_p[i + 1].mul(v);
      prefix_m[i + 1] = prefix_m[i];
      prefix_m[i + 1].mul(1.0 - v);
    }
    LogProduct suffix_p, suffix_m;
    for (std::size_t i = deg; i-- > 0;) {
      next.var_to_clause[edges[i]] =
          normalise(prefix_p[i] * suffix_p, prefix_m[i] * suffix_m);
      const double v = next.clause_to_var[edges[i]];
      suffix_p.mul(v);
      suffix_m.mul(1.0 - v);
    }
  });
  return next;
}

MarginalEstimate bp_marginals(const FactorGraph& g, const MessageState& s) {
  MarginalEstimate out;
  out.round = s.round;
  out.marginal.assign(g.num_vars(), 0.5);
  for_each_block(g.num_vars(), [&](std::size_t xi) {
    LogProduct plus, minus;
    for (std::uint32_t e : g.var_edges(static_cast<VarId>(xi))) {
      plus.mul(s.clause_to_var[e]);
      minus.mul(1.0 - s.clause_to_var[e]);
    }
    out.marginal[xi] = normalise(plus, minus);
  });
  return out;
}

BpRun bp_run(const Formula& f, unsigned rounds) {
  const FactorGraph g(f);
  MessageState s = init_messages(g);
  for (unsigned r = 0; r < rounds; ++r) s = bp_step(g, s);
  MarginalEstimate m = bp_marginals(g, s);
  return BpRun{std::move(s), std::move(m)};
}

std::vector<double> empirical_marginal_distribution(const Formula& f,
                                                    unsigned rounds) {
  std::vector<double> out = bp_run(f, rounds).marginals.marginal;
  std::sort(out.begin(), out.end());
  return out;
}

unsigned default_bp_rounds(std::uint32_t n) {
  unsigned ceil_log2 = 0;
  if (n > 1) ceil_log2 = static_cast<unsigned>(std::bit_width(n - 1u));
  return 2 * ceil_log2 + 10;
}

}  // namespace cavity2sat
