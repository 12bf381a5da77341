// Copyright 2026 The gtprob Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gtp/errors.hpp"
#include "gtp/game_core.hpp"
#include "gtp/lattice_pricer.hpp"
#include "gtp/lp.hpp"
#include "gtp/pmf.hpp"
#include "gtp/rational.hpp"

namespace gtp {

inline constexpr std::uint64_t kDefaultPathCap = std::uint64_t{1} << 20;

struct WeightedPath {
  std::vector<int> moves;
  Rational weight;
  NodeKey terminal;
  StatePoint state;  // S_N
};

/// Visits every positive-weight path with its product weight. Refuses when
/// |moves|^N exceeds `cap`.
template <typename F>
void for_each_path(const GameSpec& spec, F&& visit, std::uint64_t cap = kDefaultPathCap) {
  spec.validate();
  std::uint64_t bound = 1;
  for (int n = 0; n < spec.horizon; ++n) {
    bound *= static_cast<std::uint64_t>(spec.moves.size());
    if (bound > cap)
      throw EnumerationCapExceeded(std::to_string(spec.moves.size()) + "^" +
                                   std::to_string(spec.horizon) + " paths exceeds the cap of " +
                                   std::to_string(cap));
  }
  WeightedPath path;
  auto dfs = [&](auto&& self, const NodeKey& key, const Rational& weight) -> void {
    if (static_cast<int>(path.moves.size()) == spec.horizon) {
      path.weight = weight;
      path.terminal = key;
      path.state = state_of(spec, key);
      visit(static_cast<const WeightedPath&>(path));
      return;
    }
    LocalRound lr = expand(spec, key);
    if (!lr.complete())
      throw InvalidInput("round " + std::to_string(lr.round) +
                         " has no unique forecast weights; paths cannot be weighted");
    for (const auto& br : lr.branches) {
      if (sgn(*br.weight) == 0) continue;
      path.moves.push_back(br.move);
      self(self, br.child, weight * *br.weight);
      path.moves.pop_back();
    }
  };
  dfs(dfs, root_key(spec), Rational(1));
}

inline std::vector<WeightedPath> enumerate_paths(const GameSpec& spec,
                                                 std::uint64_t cap = kDefaultPathCap) {
  std::vector<WeightedPath> out;
  for_each_path(spec, [&](const WeightedPath& p) { out.push_back(p); }, cap);
  return out;
}

/// Statistics of a terminal path for pmf_by_enumeration.
namespace stat {

/// Number of index-1 moves (successes, up moves).
inline long successes(const WeightedPath& p) {
  long s = 0;
  for (int m : p.moves) s += (m == 1);
  return s;
}

/// Scalar S_N as an integer; throws when it is not one.
inline long sum(const WeightedPath& p) {
  const Rational& s = p.state.at(0);
  if (!is_integer(s)) throw InvalidInput("S_N is not an integer: " + to_string(s));
  return s.get_num().get_si();
}

inline Rational terminal_state(const WeightedPath& p) { return p.state.at(0); }

/// Move counts per move index (the multilabel S_N).
inline std::vector<long> counts(const WeightedPath& p) {
  std::vector<long> c;
  for (const auto& x : p.state) c.push_back(x.get_num().get_si());
  return c;
}

/// First k multilabel counts.
inline auto leading_counts(std::size_t k) {
  return [k](const WeightedPath& p) {
    auto c = counts(p);
    c.resize(k);
    return c;
  };
}

}  // namespace stat

/// Pushforward of path weights through `statistic`.
template <typename Stat>
auto pmf_by_enumeration(const GameSpec& spec, Stat&& statistic,
                        std::uint64_t cap = kDefaultPathCap) {
  using Point = std::decay_t<decltype(statistic(std::declval<const WeightedPath&>()))>;
  std::map<Point, Rational> w;
  for_each_path(spec, [&](const WeightedPath& p) { w[statistic(p)] += p.weight; }, cap);
  return Pmf<Point>(std::move(w));
}

// ---------------------------------------------------------------------------
// Upper and lower expected values

struct NodeWitness {
  int round = 0;  // node depth n; the stakes are for round n+1
  std::string state;
  Rational upper, lower;
  Vec upper_stake;  // superhedge: capital upper + stake.gain >= child upper
  Vec lower_stake;  // subhedge:   capital lower + stake.gain <= child lower
};

struct BoundsReport {
  Rational upper, lower, gap;
  std::vector<NodeWitness> witnesses;  // root first
};

namespace detail {

struct LocalBound {
  Rational value;
  Vec stake;
};

// Measure form of the one-round minimax over the admissible branches:
// sup/inf of sum pi_j V_j over probability vectors pi with sum pi_j g_j = 0.
inline LocalBound local_bound(const LocalRound& lr, const Vec& child_values, bool upper,
                              const std::string& state) {
  const std::size_t k = lr.branches.empty() ? 0 : lr.branches[0].gain.size();
  const std::size_t m = lr.branches.size();
  std::vector<Vec> a(k + 1, Vec(m, Rational(0)));
  Vec b(k + 1, Rational(0));
  Vec c(m);
  b[0] = 1;
  for (std::size_t j = 0; j < m; ++j) {
    a[0][j] = 1;
    for (std::size_t i = 0; i < k; ++i) a[i + 1][j] = lr.branches[j].gain[i];
    c[j] = upper ? Rational(-child_values[j]) : child_values[j];
  }
  lp::Solution sol = lp::minimize(std::move(a), std::move(b), std::move(c));
  if (sol.status == lp::Status::infeasible) {
    Vec stake(k);
    for (std::size_t i = 0; i < k; ++i) stake[i] = -sol.dual[i + 1];
    std::optional<Rational> gain;
    for (const auto& br : lr.branches) {
      Rational g = dot(stake, br.gain);
      if (!gain || g < *gain) gain = g;
    }
    throw ArbitrageError({lr.round, state, stake, *gain});
  }
  if (sol.status != lp::Status::optimal) throw Error("per-node program is unbounded");
  LocalBound out;
  out.stake.resize(k);
  if (upper) {
    out.value = -sol.objective / lr.growth;
    for (std::size_t i = 0; i < k; ++i) out.stake[i] = -sol.dual[i + 1];
  } else {
    out.value = sol.objective / lr.growth;
    for (std::size_t i = 0; i < k; ++i) out.stake[i] = sol.dual[i + 1];
  }
  return out;
}

}  // namespace detail

/// Upper and lower expected values of payoff(S_N) by backward recursion of
/// the one-round minimax at every reachable node. Throws ArbitrageError on
/// an incoherent node.
inline BoundsReport upper_lower(const GameSpec& spec, const Payoff& payoff) {
  spec.validate();
  auto reach = reachable_layers(spec);
  std::map<NodeKey, Rational> up, low, next_up, next_low;
  for (const auto& key : reach.back()) {
    Rational v = payoff(state_of(spec, key));
    next_up.emplace(key, v);
    next_low.emplace(key, v);
  }
  std::vector<std::vector<NodeWitness>> witness_layers(static_cast<std::size_t>(spec.horizon));
  for (int n = spec.horizon - 1; n >= 0; --n) {
    up.clear();
    low.clear();
    for (const auto& key : reach[static_cast<std::size_t>(n)]) {
      LocalRound lr = expand(spec, key);
      Vec vu, vl;
      for (const auto& br : lr.branches) {
        vu.push_back(next_up.at(br.child));
        vl.push_back(next_low.at(br.child));
      }
      std::string state = render_state(spec, key);
      auto hi = detail::local_bound(lr, vu, true, state);
      auto lo = detail::local_bound(lr, vl, false, state);
      witness_layers[static_cast<std::size_t>(n)].push_back(
          {n, state, hi.value, lo.value, hi.stake, lo.stake});
      up.emplace(key, hi.value);
      low.emplace(key, lo.value);
    }
    std::swap(up, next_up);
    std::swap(low, next_low);
  }
  BoundsReport report;
  report.upper = next_up.begin()->second;
  report.lower = next_low.begin()->second;
  report.gap = report.upper - report.lower;
  for (auto& layer : witness_layers)
    for (auto& w : layer) report.witnesses.push_back(std::move(w));
  return report;
}

// ---------------------------------------------------------------------------
// Coherence

struct CoherenceVerdict {
  bool coherent = true;
  std::size_t nodes_checked = 0;
  std::optional<ArbitrageCertificate> certificate;
};

/// Checks every reachable node: the quote must pass validate_forecast and
/// zero must lie in the convex hull of the admissible capital increments.
inline CoherenceVerdict coherence_check(const GameSpec& spec) {
  CoherenceVerdict out;
  try {
    spec.validate();
    std::vector<NodeKey> frontier{root_key(spec)};
    for (int n = 0; n < spec.horizon; ++n) {
      std::set<NodeKey> next;
      for (const auto& key : frontier) {
        LocalRound lr = expand(spec, key);
        ++out.nodes_checked;
        // feasibility only: zero objective
        Vec zeros(lr.branches.size(), Rational(0));
        detail::local_bound(lr, zeros, true, render_state(spec, key));
        for (const auto& br : lr.branches) next.insert(br.child);
      }
      frontier.assign(next.begin(), next.end());
    }
  } catch (const ArbitrageError& e) {
    out.coherent = false;
    out.certificate = e.certificate();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Replication collapses the bounds

struct ReplicationBoundsVerdict {
  bool holds = false;
  Rational upper, lower, alpha;
  std::string diagnostic;
};

/// Checks that a replicating plan's initial capital equals both the upper
/// and the lower expected value.
inline ReplicationBoundsVerdict check_replication_bounds(const GameSpec& spec, const Payoff& payoff,
                                      const ReplicationPlan& plan) {
  ReplicationBoundsVerdict out;
  out.alpha = plan.initial_capital;
  ReplicationReport rep = verify_replication(plan, spec, payoff);
  if (!rep.ok()) {
    out.diagnostic = "plan does not replicate the payoff (max residual " +
                     to_string(rep.max_residual) + ")";
    return out;
  }
  BoundsReport b = upper_lower(spec, payoff);
  out.upper = b.upper;
  out.lower = b.lower;
  out.holds = b.upper == out.alpha && b.lower == out.alpha;
  if (!out.holds)
    out.diagnostic = "upper " + to_string(b.upper) + ", lower " + to_string(b.lower) +
                     ", replicating capital " + to_string(out.alpha);
  return out;
}

}  // namespace gtp
