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

#include <utility>

#include "gtp/distributions.hpp"
#include "gtp/errors.hpp"
#include "gtp/game_core.hpp"
#include "gtp/lattice_pricer.hpp"
#include "gtp/rational.hpp"

namespace gtp {

/// Cox-Ross-Rubinstein market: spot S_0, up/down factors u > d, and
/// per-round growth factor r (riskless rate r - 1) with u > r > d.
struct CrrSpec {
  Rational spot;
  Rational up;
  Rational down;
  Rational growth;
  int horizon = 1;

  void validate() const {
    if (horizon < 1) throw InvalidInput("CRR horizon must be at least 1");
    if (sgn(spot) <= 0) throw InvalidInput("CRR spot must be positive");
    if (!(up > down && sgn(down) > 0)) throw InvalidInput("CRR factors need u > d > 0");
    if (growth <= down || growth >= up)
      throw ArbitrageError({0, "", {Rational(growth <= down ? 1 : -1)},
                            growth <= down ? down - growth : growth - up});
  }

  /// Risk-neutral probability (r - d) / (u - d).
  Rational risk_neutral() const { return (growth - down) / (up - down); }

  Rational asset(long ups, long downs) const {
    return spot * pow(up, static_cast<unsigned>(ups)) * pow(down, static_cast<unsigned>(downs));
  }

  GameSpec game() const {
    validate();
    return crr_game(spot, up, down, growth, horizon);
  }
};

/// Closed form: r^-N sum_m C(N,m) p^m (1-p)^(N-m) payoff(u^m d^(N-m) S_0).
inline Rational crr_price(const CrrSpec& spec, const Payoff& payoff) {
  spec.validate();
  const Rational p = spec.risk_neutral();
  Rational total = 0;
  for (long m = 0; m <= spec.horizon; ++m)
    total += Rational(binomial(spec.horizon, m)) * pow(p, static_cast<unsigned>(m)) *
             pow(1 - p, static_cast<unsigned>(spec.horizon - m)) *
             payoff({spec.asset(m, spec.horizon - m)});
  return total / pow(spec.growth, static_cast<unsigned>(spec.horizon));
}

/// Stake for round `round` at asset price `asset` (a node of round-1):
/// (eta_bar(n, uS) - eta_bar(n, dS)) / ((u - d) S).
inline Rational crr_delta(const CrrSpec& spec, const PriceLattice& lattice, int round,
                          const Rational& asset) {
  if (round < 1 || round > spec.horizon) throw InvalidInput("crr_delta: round out of range");
  const long prior = round - 1;
  for (long ups = 0; ups <= prior; ++ups) {
    if (spec.asset(ups, prior - ups) != asset) continue;
    const Rational& hi = lattice.at(round, {prior - ups, ups + 1});
    const Rational& lo = lattice.at(round, {prior - ups + 1, ups});
    return (hi - lo) / ((spec.up - spec.down) * asset);
  }
  throw InvalidInput("crr_delta: " + to_string(asset) + " is not a node of round " +
                     std::to_string(prior));
}

/// The CRR game rewritten as a two-label ticket game on discounted capital.
/// Label 0 is the up move. With x = (S_{n-1}(u-r), S_{n-1}(d-r)) / r^n the
/// reduced stake is M* = M x and the reduced capital K* = K / r^n.
struct CrrReduction {
  CrrSpec market;
  GameSpec game;

  /// Discounted per-unit capital increments (x^1, x^2) for round `round`
  /// at a node with `ups` up moves and `downs` down moves.
  Vec increments(int round, long ups, long downs) const {
    const Rational s = market.asset(ups, downs);
    const Rational disc = pow(market.growth, static_cast<unsigned>(round));
    return {s * (market.up - market.growth) / disc, s * (market.down - market.growth) / disc};
  }

  Vec reduced_stake(int round, long ups, long downs, const Rational& stake) const {
    Vec x = increments(round, ups, downs);
    return {x[0] * stake, x[1] * stake};
  }

  /// CRR move index (1 up, 0 down) to reduced label (0 up, 1 down).
  static int reduced_move(int crr_move) { return crr_move == 1 ? 0 : 1; }

  /// Payoff of the reduced game: payoff(S_N) / r^N on label counts.
  Payoff reduced_payoff(Payoff eta) const {
    return [eta = std::move(eta), m = market](const StatePoint& counts) -> Rational {
      long ups = counts.at(0).get_num().get_si();
      long downs = counts.at(1).get_num().get_si();
      return eta({m.asset(ups, downs)}) / pow(m.growth, static_cast<unsigned>(m.horizon));
    };
  }

  /// Maps a CRR stake rule to the reduced game.
  StakeRule reduced_rule(StakeRule crr_rule) const {
    return [crr_rule = std::move(crr_rule), self = *this](int round, std::span<const int> hist) {
      std::vector<int> original;
      long ups = 0;
      for (int m : hist) {
        original.push_back(m == 0 ? 1 : 0);
        ups += (m == 0);
      }
      Vec stake = crr_rule(round, original);
      return self.reduced_stake(round, ups, static_cast<long>(hist.size()) - ups, stake.at(0));
    };
  }
};

inline CrrReduction crr_to_multilabel(const CrrSpec& spec) {
  spec.validate();
  CrrReduction red;
  red.market = spec;
  red.game = multilabel_game(2, CrrReducedForecaster{spec.spot, spec.up, spec.down, spec.growth},
                             spec.horizon);
  return red;
}

/// Built-in European payoffs on a scalar S_N.
inline Payoff call_payoff(Rational strike) {
  return scalar_payoff([k = std::move(strike)](const Rational& s) {
    Rational v = s - k;
    return sgn(v) > 0 ? v : Rational(0);
  });
}

inline Payoff put_payoff(Rational strike) {
  return scalar_payoff([k = std::move(strike)](const Rational& s) {
    Rational v = k - s;
    return sgn(v) > 0 ? v : Rational(0);
  });
}

/// Pays 1 when S_N >= strike.
inline Payoff digital_payoff(Rational strike) {
  return scalar_payoff(
      [k = std::move(strike)](const Rational& s) { return s >= k ? Rational(1) : Rational(0); });
}

}  // namespace gtp
