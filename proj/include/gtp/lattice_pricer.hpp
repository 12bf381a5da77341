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
#include <map>
#include <string>
#include <vector>

#include "gtp/errors.hpp"
#include "gtp/game_core.hpp"
#include "gtp/rational.hpp"

namespace gtp {

/// Candidate prices eta_bar(n, S_n) on every node reachable through
/// admissible moves. Layer n is keyed like the game (counts or history).
struct PriceLattice {
  int horizon = 0;
  Keying keying = Keying::counts;
  std::vector<std::map<NodeKey, Rational>> layers;

  const Rational* find(int round, const NodeKey& key) const {
    if (round < 0 || round > horizon) return nullptr;
    const auto& layer = layers[static_cast<std::size_t>(round)];
    auto it = layer.find(key);
    return it == layer.end() ? nullptr : &it->second;
  }

  const Rational& at(int round, const NodeKey& key) const {
    if (const Rational* v = find(round, key)) return *v;
    throw InvalidInput("no lattice node at round " + std::to_string(round));
  }

  std::size_t node_count() const {
    std::size_t n = 0;
    for (const auto& layer : layers) n += layer.size();
    return n;
  }
};

/// Backward induction: terminal layer is the payoff, every interior node
/// the discounted forecast-weighted average of its children.
inline PriceLattice backward_induct(const GameSpec& spec, const Payoff& payoff) {
  spec.validate();
  auto reach = reachable_layers(spec);
  PriceLattice lat;
  lat.horizon = spec.horizon;
  lat.keying = keying_of(spec);
  lat.layers.resize(reach.size());

  auto& terminal = lat.layers.back();
  for (const auto& key : reach.back()) terminal.emplace(key, payoff(state_of(spec, key)));

  for (int n = spec.horizon - 1; n >= 0; --n) {
    const auto& next = lat.layers[static_cast<std::size_t>(n) + 1];
    auto& layer = lat.layers[static_cast<std::size_t>(n)];
    for (const auto& key : reach[static_cast<std::size_t>(n)]) {
      LocalRound lr = expand(spec, key);
      if (!lr.complete())
        throw InvalidInput("round " + std::to_string(lr.round) + " at node " +
                           render_state(spec, key) +
                           " has no unique forecast weights; use upper_lower");
      Rational v = 0;
      for (const auto& br : lr.branches) v += *br.weight * next.at(br.child);
      layer.emplace(key, v / lr.growth);
    }
  }
  return lat;
}

inline Rational initial_price(const PriceLattice& lattice) {
  if (lattice.layers.empty() || lattice.layers[0].size() != 1)
    throw InvalidInput("lattice has no root");
  return lattice.layers[0].begin()->second;
}

/// Stake for one node; `excluded` lists moves forced out by a degenerate
/// price (Reality cannot play them, the stake need not hedge them).
struct HedgeNode {
  Vec stake;
  std::vector<int> excluded;

  bool forced() const { return !excluded.empty(); }
};

struct ReplicationPlan {
  Rational initial_capital;
  Keying keying = Keying::counts;
  // stakes[n-1] holds the stakes for round n, keyed by the node at n-1
  std::vector<std::map<NodeKey, HedgeNode>> stakes;

  const HedgeNode& at(int round, const NodeKey& key) const {
    const auto& layer = stakes.at(static_cast<std::size_t>(round - 1));
    auto it = layer.find(key);
    if (it == layer.end())
      throw InvalidInput("replication plan has no stake for round " + std::to_string(round));
    return it->second;
  }

  StakeRule rule(const GameSpec& spec) const {
    return [plan = *this, spec](int round, std::span<const int> history) {
      NodeKey key = root_key(spec);
      for (int m : history) key = child_key(spec, key, m);
      return plan.at(round, key).stake;
    };
  }
};

/// Delta hedge. In two-outcome rounds the stake is the ratio of the price
/// increment to the capital increment per unit stake, which is
/// eta_bar(n,S+1) - eta_bar(n,S) in the rescaled game, divided by a+b for
/// offsets and by (u-d)S_{n-1} for crr. In multilabel rounds the stake on
/// label i is eta_bar(n, S_{n-1} + e_i).
inline ReplicationPlan delta_hedge(const PriceLattice& lattice, const GameSpec& spec) {
  if (lattice.horizon != spec.horizon || lattice.keying != keying_of(spec))
    throw InvalidInput("lattice was built for a different game");
  ReplicationPlan plan;
  plan.initial_capital = initial_price(lattice);
  plan.keying = lattice.keying;
  plan.stakes.resize(static_cast<std::size_t>(spec.horizon));
  const auto dim = static_cast<std::size_t>(spec.moves.stake_dimension());

  for (int n = 1; n <= spec.horizon; ++n) {
    const auto& parents = lattice.layers[static_cast<std::size_t>(n) - 1];
    auto& out = plan.stakes[static_cast<std::size_t>(n) - 1];
    for (const auto& [key, value] : parents) {
      LocalRound lr = expand(spec, key);
      HedgeNode node;
      node.excluded = lr.excluded;
      node.stake.assign(dim, Rational(0));
      if (spec.moves.kind == MoveKind::multilabel) {
        for (const auto& br : lr.branches)
          node.stake[static_cast<std::size_t>(br.move)] = lattice.at(n, br.child);
      } else if (lr.branches.size() == 2) {
        const auto& lo = lr.branches[0];
        const auto& hi = lr.branches[1];
        node.stake[0] = (lattice.at(n, hi.child) - lattice.at(n, lo.child)) /
                        (hi.gain[0] - lo.gain[0]);
      } else if (lr.branches.size() > 2) {
        throw InvalidInput("round " + std::to_string(n) + " has more than two outcomes; no hedge");
      }
      out.emplace(key, std::move(node));
    }
  }
  return plan;
}

struct ReplicationViolation {
  std::vector<int> moves;
  Rational residual;  // final capital minus payoff
};

struct ReplicationReport {
  std::uint64_t paths = 0;
  Rational max_residual = 0;  // largest |residual|
  std::vector<ReplicationViolation> violations;

  bool ok() const { return violations.empty(); }
};

/// Replays every admissible path from the plan's initial capital and checks
/// that the final capital equals the payoff exactly.
inline ReplicationReport verify_replication(const ReplicationPlan& plan, const GameSpec& spec,
                                            const Payoff& payoff,
                                            std::uint64_t path_cap = 1u << 20) {
  ReplicationReport report;
  std::vector<int> moves;
  auto visit = [&](auto&& self, const NodeKey& key, const Rational& capital) -> void {
    const int n = static_cast<int>(moves.size());
    if (n == spec.horizon) {
      if (++report.paths > path_cap)
        throw EnumerationCapExceeded("more than " + std::to_string(path_cap) + " paths to verify");
      Rational residual = capital - payoff(state_of(spec, key));
      if (abs(residual) > report.max_residual) report.max_residual = abs(residual);
      if (sgn(residual) != 0) report.violations.push_back({moves, residual});
      return;
    }
    LocalRound lr = expand(spec, key);
    const HedgeNode& node = plan.at(n + 1, key);
    for (const auto& br : lr.branches) {
      if (br.weight && sgn(*br.weight) == 0) continue;
      moves.push_back(br.move);
      self(self, br.child, step_capital(capital, node.stake, br.element, lr.price, spec.update));
      moves.pop_back();
    }
  };
  visit(visit, root_key(spec), plan.initial_capital);
  return report;
}

}  // namespace gtp
