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

#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gtp/errors.hpp"
#include "gtp/pmf.hpp"
#include "gtp/rational.hpp"

namespace gtp {

/// What a neutral forecaster may look at before quoting round `round`:
/// move counts per move index so far, and the full move history when the
/// game is keyed by history (empty otherwise).
struct NodeView {
  int round = 1;
  std::span<const long> counts;
  std::span<const int> history;

  /// Successes S_{n-1} of a binary game (count of move index 1).
  long successes() const { return counts.size() > 1 ? counts[1] : 0; }
};

// ---------------------------------------------------------------------------
// Urn models

/// Urn with `red` and `black` balls; `added` balls of the drawn colour are
/// put back after each draw (0: with replacement, -1: without, >0: Polya).
struct UrnParams {
  long red = 0;
  long black = 0;
  long added = -1;

  void validate(int horizon) const {
    if (red < 0 || black < 0) throw InvalidInput("urn ball counts must be nonnegative");
    if (added < -1) throw InvalidInput("urn: added balls per draw must be >= -1");
    if (added == -1 && red + black < horizon)
      throw InvalidInput("urn without replacement needs red + black >= horizon");
    if (added >= 0 && (red <= 0 || black <= 0))
      throw InvalidInput("urn with replacement needs red > 0 and black > 0");
  }
};

/// Ratio of red balls before draw `round` when `successes` reds are out.
/// The positive part keeps the price at 0 once every red ball is drawn.
inline Rational urn_price(const UrnParams& urn, int round, long successes) {
  if (urn.added != -1) throw InvalidInput("urn_price expects sampling without replacement");
  long left = urn.red + urn.black - (round - 1);
  if (left <= 0) throw InvalidInput("urn is empty at round " + std::to_string(round));
  return make_rational(std::max(0L, urn.red - successes), left);
}

inline Rational polya_price(const UrnParams& urn, int round, long successes) {
  if (urn.added < 0) throw InvalidInput("polya_price expects added balls >= 0");
  return make_rational(urn.red + urn.added * successes,
                       urn.red + urn.black + (round - 1) * urn.added);
}

// ---------------------------------------------------------------------------
// Staircase construction for an arbitrary pmf on {0..N}

/// Target pmf (trailing zeros trimmed) with its tail ratios
/// ratio(m) = (q_m + ... + q_N) / (q_{m-1} + ... + q_N), m = 1..N.
struct Staircase {
  std::vector<Rational> target;
  std::vector<Rational> ratios;  // ratios[m-1] holds ratio(m)

  int horizon() const { return static_cast<int>(target.size()) - 1; }

  /// ratio(m), with ratio(m) = 0 beyond the horizon.
  Rational ratio(int m) const {
    if (m < 1 || m > horizon()) return 0;
    return ratios[static_cast<std::size_t>(m - 1)];
  }
};

inline Staircase tail_ratios(std::span<const Rational> q) {
  if (q.empty()) throw InvalidInput("tail_ratios: empty pmf");
  Rational total = 0;
  for (const auto& w : q) {
    if (sgn(w) < 0) throw InvalidInput("tail_ratios: negative weight");
    total += w;
  }
  if (total == 0) throw InvalidInput("tail_ratios: all weights are zero");
  if (total != 1) throw InvalidInput("tail_ratios: weights sum to " + to_string(total));

  std::size_t last = q.size() - 1;
  while (sgn(q[last]) == 0) --last;

  Staircase st;
  st.target.assign(q.begin(), q.begin() + static_cast<long>(last) + 1);
  Rational tail = st.target.back();
  std::vector<Rational> tails(st.target.size());
  tails.back() = tail;
  for (std::size_t m = st.target.size() - 1; m-- > 0;) tails[m] = tails[m + 1] + st.target[m];
  for (std::size_t m = 1; m < st.target.size(); ++m) st.ratios.push_back(tails[m] / tails[m - 1]);
  return st;
}

/// Rebuilds q_m = ratio(1)...ratio(m) (1 - ratio(m+1)).
inline std::vector<Rational> reconstruct(const Staircase& st) {
  std::vector<Rational> q;
  Rational prefix = 1;
  for (int m = 0; m <= st.horizon(); ++m) {
    if (m > 0) prefix *= st.ratio(m);
    q.push_back(prefix * (1 - st.ratio(m + 1)));
  }
  return q;
}

/// Price ratio(n) while Reality has played only 1s, 0 once it has stopped.
inline Rational staircase_price(const Staircase& st, int round, long successes) {
  return successes == round - 1 ? st.ratio(round) : Rational(0);
}

// ---------------------------------------------------------------------------
// Forecaster strategies

/// Same scalar price every round.
struct ConstantPrice {
  Rational p;
};

/// Same simplex vector every round (multilabel games). Not checked on
/// construction; an inadmissible vector is reported by the game as an
/// arbitrage.
struct ConstantVector {
  Vec p;
};

struct UrnForecaster {
  UrnParams urn;
};

struct PolyaForecaster {
  UrnParams urn;
};

struct StaircaseForecaster {
  Staircase staircase;
};

/// Multilabel forecaster realizing a joint law of the first d-1 counts.
/// Stage k ascends coordinate k along the staircase of its conditional law
/// given the coordinates already fixed; a move on the last label (the slack)
/// closes the stage.
struct ChainedForecaster {
  int labels = 2;
  VectorPmf joint;
  // stages[k] maps the realized prefix (m_1..m_k) to the staircase of the
  // conditional law of coordinate k+1.
  std::vector<std::map<std::vector<long>, Staircase>> stages;
  int required_horizon = 0;
};

/// Risk-neutral ticket price of the CRR game rewritten as a two-label game;
/// label 0 is the up move.
struct CrrReducedForecaster {
  Rational spot, up, down, growth;
};

/// General neutral forecaster: any function of the move history.
struct HistoryForecaster {
  std::function<Vec(int round, std::span<const int> history)> quote;
  int dimension = 1;
  std::string name = "history";
};

inline ConstantPrice constant_price(const Rational& p) {
  if (sgn(p) < 0) throw ArbitrageError({0, "", {Rational(1)}, -p});
  if (p > 1) throw ArbitrageError({0, "", {Rational(-1)}, p - 1});
  return {p};
}

inline ChainedForecaster chain_conditionals(const VectorPmf& joint) {
  if (joint.size() == 0) throw InvalidInput("chain_conditionals: empty joint pmf");
  const std::size_t dims = joint.begin()->first.size();
  if (dims == 0) throw InvalidInput("chain_conditionals: points need at least one coordinate");

  ChainedForecaster out;
  out.labels = static_cast<int>(dims) + 1;
  out.joint = joint;
  out.stages.resize(dims);

  long widest = 0;
  for (const auto& [point, w] : joint) {
    if (point.size() != dims) throw InvalidInput("chain_conditionals: mixed point dimensions");
    long total = 0;
    for (long m : point) {
      if (m < 0) throw InvalidInput("chain_conditionals: negative coordinate");
      total += m;
    }
    if (sgn(w) > 0) widest = std::max(widest, total);
  }
  out.required_horizon = static_cast<int>(widest + static_cast<long>(dims) - 1);

  for (std::size_t k = 0; k < dims; ++k) {
    // prefix -> (value of coordinate k -> mass)
    std::map<std::vector<long>, std::map<long, Rational>> conditional;
    for (const auto& [point, w] : joint) {
      if (sgn(w) == 0) continue;
      std::vector<long> prefix(point.begin(), point.begin() + static_cast<long>(k));
      conditional[prefix][point[k]] += w;
    }
    for (auto& [prefix, masses] : conditional) {
      Rational total = 0;
      for (const auto& [m, w] : masses) total += w;
      std::vector<Rational> q(static_cast<std::size_t>(masses.rbegin()->first) + 1, Rational(0));
      for (const auto& [m, w] : masses) q[static_cast<std::size_t>(m)] = w / total;
      out.stages[k].emplace(prefix, tail_ratios(q));
    }
  }
  return out;
}

/// A neutral forecasting strategy. Quotes are scalar (price of the ticket
/// x_n in binary and finite-ticket games) or a vector over the d labels.
class Forecaster {
 public:
  using Strategy = std::variant<ConstantPrice, ConstantVector, UrnForecaster, PolyaForecaster,
                                StaircaseForecaster, ChainedForecaster, CrrReducedForecaster,
                                HistoryForecaster>;

  Forecaster() : strategy_(ConstantPrice{make_rational(1, 2)}) {}
  template <typename S>
    requires std::is_constructible_v<Strategy, S>
  Forecaster(S s) : strategy_(std::move(s)) {}  // NOLINT(google-explicit-constructor)

  const Strategy& strategy() const noexcept { return strategy_; }

  /// True when the quote depends only on the round and the move counts.
  bool markovian() const { return !std::holds_alternative<HistoryForecaster>(strategy_); }

  /// 1 for scalar quotes, d for simplex quotes.
  int dimension() const {
    return std::visit(
        [](const auto& s) -> int {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, ConstantVector>) return static_cast<int>(s.p.size());
          else if constexpr (std::is_same_v<T, ChainedForecaster>) return s.labels;
          else if constexpr (std::is_same_v<T, CrrReducedForecaster>) return 2;
          else if constexpr (std::is_same_v<T, HistoryForecaster>) return s.dimension;
          else return 1;
        },
        strategy_);
  }

  std::string name() const {
    return std::visit(
        [](const auto& s) -> std::string {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, ConstantPrice> || std::is_same_v<T, ConstantVector>)
            return "constant";
          else if constexpr (std::is_same_v<T, UrnForecaster>) return "urn";
          else if constexpr (std::is_same_v<T, PolyaForecaster>) return "polya";
          else if constexpr (std::is_same_v<T, StaircaseForecaster>) return "staircase";
          else if constexpr (std::is_same_v<T, ChainedForecaster>) return "chained";
          else if constexpr (std::is_same_v<T, CrrReducedForecaster>) return "crr-reduced";
          else return s.name;
        },
        strategy_);
  }

  Vec quote(const NodeView& node) const {
    return std::visit([&](const auto& s) { return quote_of(s, node); }, strategy_);
  }

 private:
  static Vec quote_of(const ConstantPrice& s, const NodeView&) { return {s.p}; }
  static Vec quote_of(const ConstantVector& s, const NodeView&) { return s.p; }
  static Vec quote_of(const UrnForecaster& s, const NodeView& v) {
    return {urn_price(s.urn, v.round, v.successes())};
  }
  static Vec quote_of(const PolyaForecaster& s, const NodeView& v) {
    return {polya_price(s.urn, v.round, v.successes())};
  }
  static Vec quote_of(const StaircaseForecaster& s, const NodeView& v) {
    return {staircase_price(s.staircase, v.round, v.successes())};
  }
  static Vec quote_of(const ChainedForecaster& s, const NodeView& v) {
    const auto d = static_cast<std::size_t>(s.labels);
    if (v.counts.size() != d) throw InvalidInput("chained forecaster: wrong label count");
    Vec p(d, Rational(0));
    const long stage = v.counts[d - 1];
    if (stage >= static_cast<long>(d) - 1) {
      p[d - 1] = 1;
      return p;
    }
    const auto k = static_cast<std::size_t>(stage);
    std::vector<long> prefix(v.counts.begin(), v.counts.begin() + static_cast<long>(k));
    auto it = s.stages[k].find(prefix);
    if (it == s.stages[k].end()) {  // prefix outside the support: close the stage
      p[d - 1] = 1;
      return p;
    }
    Rational up = it->second.ratio(static_cast<int>(v.counts[k]) + 1);
    p[k] = up;
    p[d - 1] = 1 - up;
    return p;
  }
  static Vec quote_of(const CrrReducedForecaster& s, const NodeView& v) {
    // counts[0] up moves, counts[1] down moves
    long ups = v.counts.size() > 0 ? v.counts[0] : 0;
    long downs = v.counts.size() > 1 ? v.counts[1] : 0;
    Rational asset = s.spot * pow(s.up, static_cast<unsigned>(ups)) *
                     pow(s.down, static_cast<unsigned>(downs));
    Rational discount = pow(s.growth, static_cast<unsigned>(v.round));
    Rational x_up = asset * (s.up - s.growth) / discount;
    Rational x_down = asset * (s.down - s.growth) / discount;
    return {-x_down / (x_up - x_down), x_up / (x_up - x_down)};
  }
  static Vec quote_of(const HistoryForecaster& s, const NodeView& v) {
    return s.quote(v.round, v.history);
  }

  Strategy strategy_;
};

}  // namespace gtp
