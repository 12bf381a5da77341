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

// JSON and CSV surfaces. Rationals travel as exact "p/q" strings; decimals
// are an optional rendering added next to them.

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gtp/errors.hpp"
#include "gtp/forecasters.hpp"
#include "gtp/game_core.hpp"
#include "gtp/lattice_pricer.hpp"
#include "gtp/oracle.hpp"
#include "gtp/pmf.hpp"
#include "gtp/rational.hpp"

namespace gtp::io {

using json = nlohmann::ordered_json;

inline json rational_json(const Rational& q) { return to_string(q); }

/// Accepts "p/q" / decimal strings and JSON integers.
inline Rational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float())
    throw InvalidInput("floating-point JSON numbers are not exact; quote rationals as strings");
  throw InvalidInput("expected a rational, got " + j.dump());
}

inline json vec_json(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(rational_json(x));
  return out;
}

inline Vec vec_from(const json& j) {
  if (!j.is_array()) throw InvalidInput("expected an array of rationals, got " + j.dump());
  Vec out;
  for (const auto& x : j) out.push_back(rational_from(x));
  return out;
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline long integer_from(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw InvalidInput(std::string("field '") + key + "' must be an integer");
  return v.get<long>();
}

// ---------------------------------------------------------------------------
// Forecasters

inline json forecaster_json(const Forecaster& f) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConstantPrice>) {
          return {{"type", "constant"}, {"p", rational_json(s.p)}};
        } else if constexpr (std::is_same_v<T, ConstantVector>) {
          return {{"type", "constant"}, {"p", vec_json(s.p)}};
        } else if constexpr (std::is_same_v<T, UrnForecaster>) {
          return {{"type", "urn"}, {"nu1", s.urn.red}, {"nu2", s.urn.black}};
        } else if constexpr (std::is_same_v<T, PolyaForecaster>) {
          return {{"type", "polya"}, {"nu1", s.urn.red}, {"nu2", s.urn.black}, {"c", s.urn.added}};
        } else if constexpr (std::is_same_v<T, StaircaseForecaster>) {
          return {{"type", "staircase"}, {"q", vec_json(s.staircase.target)}};
        } else if constexpr (std::is_same_v<T, ChainedForecaster>) {
          json joint = json::array();
          for (const auto& [point, w] : s.joint) joint.push_back({{"point", point}, {"weight", rational_json(w)}});
          return {{"type", "chained"}, {"joint", joint}};
        } else if constexpr (std::is_same_v<T, CrrReducedForecaster>) {
          return {{"type", "crr-reduced"}, {"s0", rational_json(s.spot)}, {"u", rational_json(s.up)},
                  {"d", rational_json(s.down)}, {"r", rational_json(s.growth)}};
        } else {
          throw InvalidInput("history-dependent forecasters cannot be serialized");
        }
      },
      f.strategy());
}

inline Forecaster forecaster_from(const json& j) {
  const std::string type = field(j, "type").get<std::string>();
  if (type == "constant") {
    const json& p = field(j, "p");
    if (p.is_array()) return ConstantVector{vec_from(p)};
    return constant_price(rational_from(p));
  }
  if (type == "urn") return UrnForecaster{{integer_from(j, "nu1"), integer_from(j, "nu2"), -1}};
  if (type == "polya") {
    UrnParams urn{integer_from(j, "nu1"), integer_from(j, "nu2"), integer_from(j, "c")};
    if (urn.added == -1) return UrnForecaster{urn};
    return PolyaForecaster{urn};
  }
  if (type == "staircase") {
    Vec q = vec_from(field(j, "q"));
    return StaircaseForecaster{tail_ratios(q)};
  }
  if (type == "chained") {
    VectorPmf::map_type w;
    for (const auto& e : field(j, "joint")) {
      std::vector<long> point = field(e, "point").get<std::vector<long>>();
      w[point] += rational_from(field(e, "weight"));
    }
    return chain_conditionals(VectorPmf(std::move(w)));
  }
  if (type == "crr-reduced")
    return CrrReducedForecaster{rational_from(field(j, "s0")), rational_from(field(j, "u")),
                                rational_from(field(j, "d")), rational_from(field(j, "r"))};
  throw InvalidInput("unknown forecaster type '" + type + "'");
}

// ---------------------------------------------------------------------------
// GameSpec

inline const char* update_name(UpdateKind k) {
  switch (k) {
    case UpdateKind::additive: return "additive";
    case UpdateKind::ticket: return "ticket";
    case UpdateKind::inner_product: return "inner-product";
    case UpdateKind::crr: return "crr";
  }
  return "";
}

inline UpdateKind default_update(MoveKind k) {
  switch (k) {
    case MoveKind::binary_offsets: return UpdateKind::additive;
    case MoveKind::multilabel: return UpdateKind::inner_product;
    case MoveKind::crr_factors: return UpdateKind::crr;
    default: return UpdateKind::ticket;
  }
}

inline json game_json(const GameSpec& g) {
  json moves;
  switch (g.moves.kind) {
    case MoveKind::binary_offsets:
      moves = {{"kind", "binary-offsets"}, {"a", rational_json(g.moves.a)}, {"b", rational_json(g.moves.b)}};
      break;
    case MoveKind::binary_unit: moves = {{"kind", "binary-unit"}}; break;
    case MoveKind::multilabel: moves = {{"kind", "multilabel"}, {"d", g.moves.labels}}; break;
    case MoveKind::crr_factors:
      moves = {{"kind", "crr-factors"}, {"u", rational_json(g.moves.up)}, {"d", rational_json(g.moves.down)}};
      break;
    case MoveKind::finite_ticket: moves = {{"kind", "finite-ticket"}, {"values", vec_json(g.moves.values)}}; break;
  }
  json out = {{"horizon", g.horizon}, {"moves", moves}, {"update", update_name(g.update.kind)}};
  if (g.update.kind == UpdateKind::crr) out["interest"] = rational_json(g.update.interest);
  if (g.forecaster) out["forecaster"] = forecaster_json(*g.forecaster);
  out["initial_capital"] = rational_json(g.initial_capital);
  out["origin"] = rational_json(g.origin);
  return out;
}

inline GameSpec game_from(const json& j) {
  GameSpec g;
  g.horizon = static_cast<int>(integer_from(j, "horizon"));
  const json& mv = field(j, "moves");
  const std::string kind = field(mv, "kind").get<std::string>();
  if (kind == "binary-offsets") g.moves = MoveSpace::binary_offsets(rational_from(field(mv, "a")), rational_from(field(mv, "b")));
  else if (kind == "binary-unit") g.moves = MoveSpace::binary_unit();
  else if (kind == "multilabel") g.moves = MoveSpace::multilabel(static_cast<int>(integer_from(mv, "d")));
  else if (kind == "crr-factors") g.moves = MoveSpace::crr_factors(rational_from(field(mv, "u")), rational_from(field(mv, "d")));
  else if (kind == "finite-ticket") g.moves = MoveSpace::finite_ticket(vec_from(field(mv, "values")));
  else throw InvalidInput("unknown move space kind '" + kind + "'");

  g.update.kind = default_update(g.moves.kind);
  if (j.contains("update")) {
    const std::string u = j.at("update").get<std::string>();
    if (u == "additive") g.update.kind = UpdateKind::additive;
    else if (u == "ticket") g.update.kind = UpdateKind::ticket;
    else if (u == "inner-product") g.update.kind = UpdateKind::inner_product;
    else if (u == "crr") g.update.kind = UpdateKind::crr;
    else throw InvalidInput("unknown update rule '" + u + "'");
  }
  if (j.contains("interest")) g.update.interest = rational_from(j.at("interest"));
  if (j.contains("forecaster")) g.forecaster = forecaster_from(j.at("forecaster"));
  if (j.contains("initial_capital")) g.initial_capital = rational_from(j.at("initial_capital"));
  if (j.contains("origin")) g.origin = rational_from(j.at("origin"));
  g.validate();
  return g;
}

// ---------------------------------------------------------------------------
// Lattice, plan, reports

inline json lattice_json(const PriceLattice& lat, const GameSpec& spec) {
  json nodes = json::array();
  for (int n = 0; n <= lat.horizon; ++n)
    for (const auto& [key, v] : lat.layers[static_cast<std::size_t>(n)])
      nodes.push_back(json::array({n, render_state(spec, key), rational_json(v)}));
  return {{"horizon", lat.horizon}, {"nodes", nodes}};
}

inline json plan_json(const ReplicationPlan& plan, const GameSpec& spec) {
  json stakes = json::array();
  for (std::size_t i = 0; i < plan.stakes.size(); ++i)
    for (const auto& [key, node] : plan.stakes[i]) {
      json e = {{"round", i + 1}, {"state", render_state(spec, key)}, {"stake", vec_json(node.stake)}};
      if (node.forced()) e["excluded"] = node.excluded;
      stakes.push_back(e);
    }
  return {{"initial_capital", rational_json(plan.initial_capital)}, {"stakes", stakes}};
}

/// Reads a plan written by plan_json back against `spec`; states are
/// matched by their rendering among the reachable nodes.
inline ReplicationPlan plan_from(const json& j, const GameSpec& spec) {
  ReplicationPlan plan;
  plan.initial_capital = rational_from(field(j, "initial_capital"));
  plan.keying = keying_of(spec);
  plan.stakes.resize(static_cast<std::size_t>(spec.horizon));
  auto reach = reachable_layers(spec);
  std::vector<std::map<std::string, NodeKey>> by_state(reach.size());
  for (std::size_t n = 0; n < reach.size(); ++n)
    for (const auto& key : reach[n]) by_state[n].emplace(render_state(spec, key), key);
  for (const auto& e : field(j, "stakes")) {
    long round = integer_from(e, "round");
    if (round < 1 || round > spec.horizon)
      throw InvalidInput("plan round " + std::to_string(round) + " is outside the game");
    const std::string state = field(e, "state").get<std::string>();
    const auto& states = by_state[static_cast<std::size_t>(round) - 1];
    auto it = states.find(state);
    if (it == states.end())
      throw InvalidInput("plan state " + state + " is not reachable before round " + std::to_string(round));
    HedgeNode node{vec_from(field(e, "stake")), {}};
    if (e.contains("excluded")) node.excluded = e.at("excluded").get<std::vector<int>>();
    plan.stakes[static_cast<std::size_t>(round) - 1][it->second] = std::move(node);
  }
  return plan;
}

/// round,state,stake,forced; vector stakes are ';'-separated.
inline std::string plan_csv(const ReplicationPlan& plan, const GameSpec& spec) {
  std::ostringstream os;
  os << "round,state,stake,forced\n";
  for (std::size_t i = 0; i < plan.stakes.size(); ++i)
    for (const auto& [key, node] : plan.stakes[i]) {
      std::string forced;
      for (std::size_t k = 0; k < node.excluded.size(); ++k)
        forced += (k ? ";" : "") + std::string("!") + std::to_string(node.excluded[k]);
      os << i + 1 << ",\"" << render_state(spec, key) << "\"," << join(node.stake, ";") << ","
         << forced << "\n";
    }
  return os.str();
}

inline json certificate_json(const ArbitrageCertificate& c) {
  json out = {{"stake", vec_json(c.stake)}, {"guaranteed_gain", rational_json(c.guaranteed_gain)}};
  if (!c.node.empty()) {
    out["round"] = c.round;
    out["state"] = c.node;
  }
  return out;
}

inline json bounds_json(const BoundsReport& b, std::optional<int> precision = std::nullopt) {
  json w = json::array();
  for (const auto& n : b.witnesses)
    w.push_back({{"n", n.round}, {"state", n.state}, {"upper", rational_json(n.upper)},
                 {"lower", rational_json(n.lower)}, {"upper_stake", vec_json(n.upper_stake)},
                 {"lower_stake", vec_json(n.lower_stake)}});
  json out = {{"upper", rational_json(b.upper)}, {"lower", rational_json(b.lower)}, {"gap", rational_json(b.gap)}};
  if (precision) {
    out["upper_decimal"] = to_decimal(b.upper, *precision);
    out["lower_decimal"] = to_decimal(b.lower, *precision);
  }
  out["witnesses"] = w;
  return out;
}

inline json replication_json(const ReplicationReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) v.push_back({{"moves", x.moves}, {"residual", rational_json(x.residual)}});
  return {{"paths", r.paths}, {"max_residual", rational_json(r.max_residual)}, {"ok", r.ok()}, {"violations", v}};
}

inline json point_json(long p) { return p; }
inline json point_json(const std::vector<long>& p) { return p; }
inline json point_json(const Rational& p) { return rational_json(p); }

template <typename Point>
json pmf_json(const Pmf<Point>& pmf, std::optional<int> precision = std::nullopt) {
  json support = json::array();
  for (const auto& [point, w] : pmf) {
    json e = {{"value", point_json(point)}, {"weight", rational_json(w)}};
    if (precision) e["decimal"] = to_decimal(w, *precision);
    support.push_back(e);
  }
  return {{"support", support}};
}

template <typename Point>
std::string pmf_csv(const Pmf<Point>& pmf, std::optional<int> precision = std::nullopt) {
  std::ostringstream os;
  os << "value,weight" << (precision ? ",decimal" : "") << "\n";
  for (const auto& [point, w] : pmf) {
    std::string p = render_point(point);
    if (p.find(',') != std::string::npos) p = "\"" + p + "\"";
    os << p << "," << to_string(w);
    if (precision) os << "," << to_decimal(w, *precision);
    os << "\n";
  }
  return os.str();
}

}  // namespace gtp::io
