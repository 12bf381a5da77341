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

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "gtp/errors.hpp"
#include "gtp/forecasters.hpp"
#include "gtp/rational.hpp"

namespace gtp {

// ---------------------------------------------------------------------------
// Move spaces

enum class MoveKind {
  binary_offsets,  // x in {a, -b}
  binary_unit,     // x in {0, 1}, ticket priced by Forecaster
  multilabel,      // x in {e_1, ..., e_d}
  crr_factors,     // S_n = S_{n-1} * x, x in {u, d}
  finite_ticket,   // x in a finite set of values, ticket priced by Forecaster
};

/// Reality's move space. Moves are addressed by index; for the two-point
/// spaces index 1 is the "up" move (a, 1, or u) and index 0 the other.
struct MoveSpace {
  MoveKind kind = MoveKind::binary_unit;
  Rational a, b;     // binary_offsets
  int labels = 2;    // multilabel
  Rational up, down; // crr_factors
  Vec values;        // finite_ticket, strictly increasing

  static MoveSpace binary_offsets(Rational a, Rational b) {
    if (sgn(a) <= 0 || sgn(b) <= 0) throw InvalidInput("binary offsets need a > 0 and b > 0");
    MoveSpace m;
    m.kind = MoveKind::binary_offsets;
    m.a = std::move(a);
    m.b = std::move(b);
    return m;
  }
  static MoveSpace binary_unit() { return {}; }
  static MoveSpace multilabel(int d) {
    if (d < 2) throw InvalidInput("multilabel move space needs d >= 2");
    MoveSpace m;
    m.kind = MoveKind::multilabel;
    m.labels = d;
    return m;
  }
  static MoveSpace crr_factors(Rational u, Rational d) {
    if (!(u > d && sgn(d) > 0)) throw InvalidInput("CRR factors need u > d > 0");
    MoveSpace m;
    m.kind = MoveKind::crr_factors;
    m.up = std::move(u);
    m.down = std::move(d);
    return m;
  }
  static MoveSpace finite_ticket(Vec values) {
    if (values.size() < 2) throw InvalidInput("finite ticket needs at least two move values");
    for (std::size_t i = 1; i < values.size(); ++i)
      if (!(values[i - 1] < values[i]))
        throw InvalidInput("finite ticket move values must be strictly increasing");
    MoveSpace m;
    m.kind = MoveKind::finite_ticket;
    m.values = std::move(values);
    return m;
  }

  int size() const {
    switch (kind) {
      case MoveKind::multilabel: return labels;
      case MoveKind::finite_ticket: return static_cast<int>(values.size());
      default: return 2;
    }
  }

  /// Dimension of Skeptic's stake.
  int stake_dimension() const { return kind == MoveKind::multilabel ? labels : 1; }

  /// Scalar value of a move (for multilabel, the label index).
  Rational scalar_value(int move) const {
    switch (kind) {
      case MoveKind::binary_offsets: return move == 1 ? a : Rational(-b);
      case MoveKind::binary_unit: return move;
      case MoveKind::crr_factors: return move == 1 ? up : down;
      case MoveKind::finite_ticket: return values.at(static_cast<std::size_t>(move));
      case MoveKind::multilabel: return move;
    }
    return 0;
  }

  /// The move as an element of R^k (e_i for multilabel).
  Vec element(int move) const {
    if (kind == MoveKind::multilabel) {
      Vec e(static_cast<std::size_t>(labels), Rational(0));
      e.at(static_cast<std::size_t>(move)) = 1;
      return e;
    }
    return {scalar_value(move)};
  }

  bool contains(int move) const { return move >= 0 && move < size(); }
};

// ---------------------------------------------------------------------------
// Capital update

enum class UpdateKind {
  additive,       // K + M x
  ticket,         // K + M (x - p)
  inner_product,  // K + M . (x - p)
  crr,            // r K + M (S_n - r S_{n-1})
};

struct UpdateRule {
  UpdateKind kind = UpdateKind::ticket;
  Rational interest = 1;  // growth factor r, crr only
};

/// One round of the capital process. For the crr rule `move` is the new
/// asset price S_n and `price` the forward r S_{n-1}; the additive rule
/// ignores `price`.
inline Rational step_capital(const Rational& capital, std::span<const Rational> stake,
                             std::span<const Rational> move, std::span<const Rational> price,
                             const UpdateRule& rule) {
  if (stake.size() != move.size())
    throw InvalidInput("stake has dimension " + std::to_string(stake.size()) +
                       " but move has dimension " + std::to_string(move.size()));
  if (rule.kind == UpdateKind::additive) return capital + dot(stake, move);
  if (price.size() != move.size())
    throw InvalidInput("price has dimension " + std::to_string(price.size()) +
                       " but move has dimension " + std::to_string(move.size()));
  Rational gain = 0;
  for (std::size_t i = 0; i < move.size(); ++i) gain += stake[i] * (move[i] - price[i]);
  if (rule.kind == UpdateKind::crr) return rule.interest * capital + gain;
  return capital + gain;
}

// ---------------------------------------------------------------------------
// Forecast validation

enum class Verdict { admissible, forced, arbitrage };

struct ForecastValidation {
  Verdict verdict = Verdict::admissible;
  std::vector<int> admissible_moves;  // moves Reality may still play
  Vec stake;                          // arbitrage witness
  Rational guaranteed_gain;           // min over all moves of the witness gain
};

namespace detail {

inline Rational worst_gain(const MoveSpace& moves, std::span<const Rational> price,
                           std::span<const Rational> stake) {
  std::optional<Rational> worst;
  for (int j = 0; j < moves.size(); ++j) {
    Vec x = moves.element(j);
    Rational g = 0;
    for (std::size_t i = 0; i < x.size(); ++i) g += stake[i] * (x[i] - price[i]);
    if (!worst || g < *worst) worst = g;
  }
  return *worst;
}

}  // namespace detail

/// Classifies a quoted price. Scalar quotes are checked against the range of
/// the move values (for binary-offsets the implicit price is 0, for crr it
/// is the growth factor r against {d, u}); vector quotes against the simplex.
inline ForecastValidation validate_forecast(std::span<const Rational> price,
                                            const MoveSpace& moves) {
  ForecastValidation out;
  if (moves.kind == MoveKind::multilabel) {
    const auto d = static_cast<std::size_t>(moves.labels);
    if (price.size() != d)
      throw InvalidInput("price vector has dimension " + std::to_string(price.size()) +
                         ", expected " + std::to_string(d));
    auto low = std::min_element(price.begin(), price.end());
    Rational total = sum(price);
    if (sgn(*low) < 0) {
      out.stake.assign(d, Rational(0));
      out.stake[static_cast<std::size_t>(low - price.begin())] = 1;
    } else if (total != 1) {
      out.stake.assign(d, Rational(total < 1 ? 1 : -1));
    }
    if (!out.stake.empty()) {
      out.verdict = Verdict::arbitrage;
      out.guaranteed_gain = detail::worst_gain(moves, price, out.stake);
      return out;
    }
    for (int i = 0; i < moves.labels; ++i)
      if (sgn(price[static_cast<std::size_t>(i)]) > 0) out.admissible_moves.push_back(i);
    out.verdict = out.admissible_moves.size() == d ? Verdict::admissible : Verdict::forced;
    return out;
  }

  if (price.size() != 1)
    throw InvalidInput("scalar move space expects a scalar price, got dimension " +
                       std::to_string(price.size()));
  Vec values;
  for (int j = 0; j < moves.size(); ++j) values.push_back(moves.scalar_value(j));
  const Rational& p = price[0];
  const Rational lo = *std::min_element(values.begin(), values.end());
  const Rational hi = *std::max_element(values.begin(), values.end());
  if (p < lo || p > hi) {
    out.verdict = Verdict::arbitrage;
    out.stake = {Rational(p < lo ? 1 : -1)};
    out.guaranteed_gain = p < lo ? lo - p : p - hi;
    return out;
  }
  for (int j = 0; j < moves.size(); ++j) {
    const Rational& x = values[static_cast<std::size_t>(j)];
    if ((p == lo && x != lo) || (p == hi && x != hi)) continue;
    out.admissible_moves.push_back(j);
  }
  out.verdict = static_cast<int>(out.admissible_moves.size()) == moves.size() ? Verdict::admissible
                                                                              : Verdict::forced;
  return out;
}

// ---------------------------------------------------------------------------
// Game specification

using StatePoint = Vec;
using Payoff = std::function<Rational(const StatePoint&)>;

/// Wraps a function of a scalar terminal state. `f` must return a Rational
/// (or an integer), not a gmp expression: those reference temporaries.
template <typename F>
Payoff scalar_payoff(F f) {
  using R = std::invoke_result_t<F&, const Rational&>;
  static_assert(std::is_same_v<R, Rational> || std::is_integral_v<R>,
                "payoff must return Rational; annotate the lambda with -> Rational");
  return [f = std::move(f)](const StatePoint& s) -> Rational { return f(s.at(0)); };
}

inline Payoff constant_payoff(Rational c) {
  return [c = std::move(c)](const StatePoint&) { return c; };
}

struct GameSpec {
  int horizon = 1;
  MoveSpace moves;
  UpdateRule update;
  std::optional<Forecaster> forecaster;
  Rational initial_capital = 0;
  Rational origin = 0;  // S_0; the initial asset price for crr

  bool needs_forecaster() const {
    return moves.kind == MoveKind::binary_unit || moves.kind == MoveKind::multilabel ||
           moves.kind == MoveKind::finite_ticket;
  }

  void validate() const {
    if (horizon < 1) throw InvalidInput("horizon must be at least 1");
    UpdateKind expected = UpdateKind::ticket;
    switch (moves.kind) {
      case MoveKind::binary_offsets: expected = UpdateKind::additive; break;
      case MoveKind::binary_unit:
      case MoveKind::finite_ticket: expected = UpdateKind::ticket; break;
      case MoveKind::multilabel: expected = UpdateKind::inner_product; break;
      case MoveKind::crr_factors: expected = UpdateKind::crr; break;
    }
    if (update.kind != expected) throw InvalidInput("update rule does not match the move space");
    if (moves.kind == MoveKind::crr_factors) {
      if (sgn(origin) <= 0) throw InvalidInput("CRR game needs S_0 > 0");
      const Rational& r = update.interest;
      if (r < moves.down) throw ArbitrageError({0, "", {Rational(1)}, moves.down - r});
      if (r > moves.up) throw ArbitrageError({0, "", {Rational(-1)}, r - moves.up});
      if (r == moves.down || r == moves.up)
        throw InvalidInput("CRR game needs u > r > d (degenerate growth factor)");
    }
    if (needs_forecaster() && !forecaster) throw InvalidInput("this game needs a forecaster");
    if (forecaster) {
      int want = moves.stake_dimension();
      if (forecaster->dimension() != want)
        throw InvalidInput("forecaster quotes have dimension " +
                           std::to_string(forecaster->dimension()) + ", expected " +
                           std::to_string(want));
    }
    if (const auto* urn = forecaster ? std::get_if<UrnForecaster>(&forecaster->strategy()) : nullptr)
      urn->urn.validate(horizon);
    if (const auto* urn = forecaster ? std::get_if<PolyaForecaster>(&forecaster->strategy()) : nullptr)
      urn->urn.validate(horizon);
    if (const auto* ch = forecaster ? std::get_if<ChainedForecaster>(&forecaster->strategy()) : nullptr)
      if (horizon < ch->required_horizon)
        throw InvalidInput("chained forecaster needs a horizon of at least " +
                           std::to_string(ch->required_horizon));
  }
};

inline GameSpec biased_coin_game(Rational a, Rational b, int horizon) {
  GameSpec g;
  g.horizon = horizon;
  g.moves = MoveSpace::binary_offsets(std::move(a), std::move(b));
  g.update = {UpdateKind::additive, 1};
  g.validate();
  return g;
}

inline GameSpec fair_coin_game(int horizon) { return biased_coin_game(1, 1, horizon); }

/// Binary {0,1} game whose ticket is priced by `forecaster`.
inline GameSpec forecast_game(Forecaster forecaster, int horizon) {
  GameSpec g;
  g.horizon = horizon;
  g.moves = MoveSpace::binary_unit();
  g.update = {UpdateKind::ticket, 1};
  g.forecaster = std::move(forecaster);
  g.validate();
  return g;
}

inline GameSpec rescaled_coin_game(const Rational& p, int horizon) {
  return forecast_game(constant_price(p), horizon);
}

inline GameSpec multilabel_game(int labels, Forecaster forecaster, int horizon) {
  GameSpec g;
  g.horizon = horizon;
  g.moves = MoveSpace::multilabel(labels);
  g.update = {UpdateKind::inner_product, 1};
  g.forecaster = std::move(forecaster);
  g.validate();
  return g;
}

inline GameSpec crr_game(Rational spot, Rational up, Rational down, Rational growth, int horizon) {
  GameSpec g;
  g.horizon = horizon;
  g.moves = MoveSpace::crr_factors(std::move(up), std::move(down));
  g.update = {UpdateKind::crr, std::move(growth)};
  g.origin = std::move(spot);
  g.validate();
  return g;
}

/// Finite move set with a single ticket priced at `price` every round.
inline GameSpec ticket_game(Vec values, Rational price, int horizon) {
  GameSpec g;
  g.horizon = horizon;
  g.moves = MoveSpace::finite_ticket(std::move(values));
  g.update = {UpdateKind::ticket, 1};
  g.forecaster = ConstantPrice{std::move(price)};
  g.validate();
  return g;
}

// ---------------------------------------------------------------------------
// Nodes

/// Markovian games are keyed by move counts per move index (a recombining
/// lattice); games with a history-dependent forecaster by the full history.
enum class Keying { counts, history };

using NodeKey = std::vector<long>;

inline Keying keying_of(const GameSpec& spec) {
  return spec.forecaster && !spec.forecaster->markovian() ? Keying::history : Keying::counts;
}

inline NodeKey root_key(const GameSpec& spec) {
  return keying_of(spec) == Keying::counts
             ? NodeKey(static_cast<std::size_t>(spec.moves.size()), 0)
             : NodeKey{};
}

inline NodeKey child_key(const GameSpec& spec, const NodeKey& key, int move) {
  NodeKey child = key;
  if (keying_of(spec) == Keying::counts) ++child.at(static_cast<std::size_t>(move));
  else child.push_back(move);
  return child;
}

inline std::vector<long> counts_of(const GameSpec& spec, const NodeKey& key) {
  if (keying_of(spec) == Keying::counts) return key;
  std::vector<long> counts(static_cast<std::size_t>(spec.moves.size()), 0);
  for (long m : key) ++counts.at(static_cast<std::size_t>(m));
  return counts;
}

/// S_n at a node: a scalar for every kind except multilabel (the counts).
inline StatePoint state_of(const GameSpec& spec, const NodeKey& key) {
  const auto c = counts_of(spec, key);
  const auto& mv = spec.moves;
  switch (mv.kind) {
    case MoveKind::binary_offsets: return {spec.origin + c[1] * mv.a - c[0] * mv.b};
    case MoveKind::binary_unit: return {spec.origin + c[1]};
    case MoveKind::crr_factors:
      return {spec.origin * pow(mv.up, static_cast<unsigned>(c[1])) *
              pow(mv.down, static_cast<unsigned>(c[0]))};
    case MoveKind::finite_ticket: {
      Rational s = spec.origin;
      for (std::size_t j = 0; j < c.size(); ++j) s += c[j] * mv.values[j];
      return {s};
    }
    case MoveKind::multilabel: {
      StatePoint s;
      for (long x : c) s.emplace_back(x);
      return s;
    }
  }
  return {};
}

inline std::string render_state(const GameSpec& spec, const NodeKey& key) {
  if (keying_of(spec) == Keying::history) {
    std::string out = "[";
    for (std::size_t i = 0; i < key.size(); ++i) out += (i ? "," : "") + std::to_string(key[i]);
    return out + "]";
  }
  StatePoint s = state_of(spec, key);
  if (s.size() == 1) return to_string(s[0]);
  return "(" + join(s) + ")";
}

inline int round_of(const GameSpec& spec, const NodeKey& key) {
  if (keying_of(spec) == Keying::history) return static_cast<int>(key.size());
  long n = 0;
  for (long c : key) n += c;
  return static_cast<int>(n);
}

/// One of Reality's admissible replies at a node.
struct Branch {
  int move = 0;
  Vec element;  // move passed to step_capital
  Vec gain;     // capital increment per unit stake
  std::optional<Rational> weight;
  NodeKey child;
};

/// The single-round game played at a node.
struct LocalRound {
  int round = 1;  // the round about to be played
  Vec quote;      // Forecaster's quote (empty for binary-offsets)
  Vec price;      // price passed to step_capital
  Rational growth = 1;
  std::vector<Branch> branches;  // admissible moves only
  std::vector<int> excluded;     // moves forced out by a degenerate price

  /// True when the branches carry forecast weights (a complete round).
  bool complete() const {
    return std::all_of(branches.begin(), branches.end(),
                       [](const Branch& b) { return b.weight.has_value(); });
  }
};

/// Builds the round played from `key`; throws ArbitrageError when the quote
/// at this node is inadmissible.
inline LocalRound expand(const GameSpec& spec, const NodeKey& key) {
  LocalRound lr;
  lr.round = round_of(spec, key) + 1;
  const auto counts = counts_of(spec, key);
  const auto& mv = spec.moves;

  std::vector<int> history;
  if (keying_of(spec) == Keying::history)
    for (long m : key) history.push_back(static_cast<int>(m));

  Vec scale_price;  // price vector the validator sees
  Rational asset = 1;
  switch (mv.kind) {
    case MoveKind::binary_offsets:
      scale_price = {Rational(0)};
      break;
    case MoveKind::crr_factors:
      asset = state_of(spec, key)[0];
      scale_price = {spec.update.interest};
      lr.growth = spec.update.interest;
      lr.price = {spec.update.interest * asset};
      break;
    default:
      lr.quote = spec.forecaster->quote(NodeView{lr.round, counts, history});
      scale_price = lr.quote;
      lr.price = lr.quote;
  }

  ForecastValidation v = validate_forecast(scale_price, mv);
  if (v.verdict == Verdict::arbitrage) {
    ArbitrageCertificate cert{lr.round, render_state(spec, key), v.stake, v.guaranteed_gain};
    if (mv.kind == MoveKind::crr_factors) cert.guaranteed_gain *= asset;
    throw ArbitrageError(std::move(cert));
  }

  std::vector<std::optional<Rational>> weights(static_cast<std::size_t>(mv.size()));
  switch (mv.kind) {
    case MoveKind::binary_offsets: {
      Rational p = mv.b / (mv.a + mv.b);
      weights = {1 - p, p};
      break;
    }
    case MoveKind::crr_factors: {
      Rational p = (spec.update.interest - mv.down) / (mv.up - mv.down);
      weights = {1 - p, p};
      break;
    }
    case MoveKind::binary_unit:
      weights = {1 - lr.quote[0], lr.quote[0]};
      break;
    case MoveKind::multilabel:
      for (std::size_t i = 0; i < lr.quote.size(); ++i) weights[i] = lr.quote[i];
      break;
    case MoveKind::finite_ticket:
      // complete only when Reality is left with one or two moves
      if (v.admissible_moves.size() == 1) {
        weights[static_cast<std::size_t>(v.admissible_moves[0])] = Rational(1);
      } else if (v.admissible_moves.size() == 2) {
        auto lo = static_cast<std::size_t>(v.admissible_moves[0]);
        auto hi = static_cast<std::size_t>(v.admissible_moves[1]);
        Rational w = (lr.quote[0] - mv.values[lo]) / (mv.values[hi] - mv.values[lo]);
        weights[lo] = 1 - w;
        weights[hi] = w;
      }
      break;
  }

  std::set<int> allowed(v.admissible_moves.begin(), v.admissible_moves.end());
  for (int j = 0; j < mv.size(); ++j) {
    if (!allowed.count(j)) {
      lr.excluded.push_back(j);
      continue;
    }
    Branch br;
    br.move = j;
    br.element = mv.element(j);
    if (mv.kind == MoveKind::crr_factors) br.element = {asset * mv.scalar_value(j)};
    br.gain = br.element;
    for (std::size_t i = 0; i < lr.price.size(); ++i) br.gain[i] -= lr.price[i];
    br.weight = weights[static_cast<std::size_t>(j)];
    br.child = child_key(spec, key, j);
    lr.branches.push_back(std::move(br));
  }
  return lr;
}

/// Nodes reachable through admissible moves, layer by layer (0..N).
inline std::vector<std::set<NodeKey>> reachable_layers(const GameSpec& spec) {
  std::vector<std::set<NodeKey>> layers(static_cast<std::size_t>(spec.horizon) + 1);
  layers[0].insert(root_key(spec));
  for (int n = 0; n < spec.horizon; ++n)
    for (const auto& key : layers[static_cast<std::size_t>(n)])
      for (const auto& br : expand(spec, key).branches)
        layers[static_cast<std::size_t>(n) + 1].insert(br.child);
  return layers;
}

// ---------------------------------------------------------------------------
// Playing the game

struct Path {
  std::vector<int> moves;
  std::vector<StatePoint> running_sums;  // S_0..S_N
};

inline Path make_path(const GameSpec& spec, std::vector<int> moves) {
  if (static_cast<int>(moves.size()) != spec.horizon)
    throw InvalidInput("path has " + std::to_string(moves.size()) + " moves, horizon is " +
                       std::to_string(spec.horizon));
  Path p;
  NodeKey key = root_key(spec);
  p.running_sums.push_back(state_of(spec, key));
  for (int m : moves) {
    if (!spec.moves.contains(m)) throw InvalidInput("move index out of range");
    key = child_key(spec, key, m);
    p.running_sums.push_back(state_of(spec, key));
  }
  p.moves = std::move(moves);
  return p;
}

struct CapitalTrace {
  std::vector<Rational> values;  // K_0..K_N
};

/// Skeptic's stake for round `round`, given the moves played so far.
using StakeRule = std::function<Vec(int round, std::span<const int> history)>;

inline StakeRule zero_stakes(const GameSpec& spec) {
  auto dim = static_cast<std::size_t>(spec.moves.stake_dimension());
  return [dim](int, std::span<const int>) { return Vec(dim, Rational(0)); };
}

inline StakeRule negated(StakeRule rule) {
  return [rule = std::move(rule)](int n, std::span<const int> h) { return negate(rule(n, h)); };
}

/// Plays `reality` against `skeptic` from the game's initial capital.
inline CapitalTrace run_game(const GameSpec& spec, const StakeRule& skeptic,
                             std::span<const int> reality) {
  if (static_cast<int>(reality.size()) != spec.horizon)
    throw InvalidInput("reality played " + std::to_string(reality.size()) +
                       " moves, horizon is " + std::to_string(spec.horizon));
  CapitalTrace trace;
  trace.values.push_back(spec.initial_capital);
  NodeKey key = root_key(spec);
  for (std::size_t i = 0; i < reality.size(); ++i) {
    const int move = reality[i];
    LocalRound lr = expand(spec, key);
    auto br = std::find_if(lr.branches.begin(), lr.branches.end(),
                           [&](const Branch& b) { return b.move == move; });
    if (br == lr.branches.end())
      throw InvalidInput("rejected path: move " + std::to_string(move) + " at round " +
                         std::to_string(lr.round) + " is not admissible");
    Vec stake = skeptic(lr.round, reality.first(i));
    trace.values.push_back(
        step_capital(trace.values.back(), stake, br->element, lr.price, spec.update));
    key = br->child;
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Affine correspondence between the biased-coin and rescaled games

/// x <-> (a+b)(x' - p) with p = b/(a+b); stakes scale by (a+b).
struct AffineRescale {
  GameSpec unit;
  Rational a, b, p;
  Rational offset;  // origin of the biased game
  int horizon = 1;

  Rational to_unit_move(const Rational& x) const {
    if (x == a) return 1;
    if (x == -b) return 0;
    throw InvalidInput("not a move of the biased game: " + to_string(x));
  }
  Rational from_unit_move(const Rational& x) const { return (a + b) * (x - p); }
  Rational to_unit_stake(const Rational& m) const { return m * (a + b); }
  Rational from_unit_stake(const Rational& m) const { return m / (a + b); }
  /// Terminal state of the biased game given the unit game's S'_N.
  Rational from_unit_state(const Rational& s) const {
    return offset + s * (a + b) - horizon * b;
  }
  Payoff to_unit_payoff(Payoff eta) const {
    return [eta = std::move(eta), *this](const StatePoint& s) {
      return eta({from_unit_state(s.at(0))});
    };
  }
};

inline AffineRescale affine_rescale(const GameSpec& spec) {
  if (spec.moves.kind != MoveKind::binary_offsets)
    throw InvalidInput("affine_rescale expects a binary-offsets game");
  AffineRescale r;
  r.a = spec.moves.a;
  r.b = spec.moves.b;
  r.p = r.b / (r.a + r.b);
  r.offset = spec.origin;
  r.horizon = spec.horizon;
  r.unit = forecast_game(constant_price(r.p), spec.horizon);
  r.unit.initial_capital = spec.initial_capital;
  return r;
}

}  // namespace gtp
