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

// gtp: exact pricing, hedging and bounds for finite forecasting games.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gtp/gtp.hpp"
#include "gtp/io.hpp"

namespace {

using gtp::Rational;
using gtp::Vec;
using gtp::io::json;

enum ExitCode : int { kOk = 0, kUsage = 1, kArbitrage = 2, kVerifyFailed = 3, kCapExceeded = 4 };

struct Options {
  // game source
  std::string spec_path;
  bool crr = false;
  std::string game;
  std::string s0, u, d, r, a = "1", b = "1", p, q, values, price;
  int n = -1;
  long nu1 = -1, nu2 = -1, c = 0;
  std::string payoff;
  // pmf
  std::string family;
  bool check = false;
  // verify
  std::string plan_path;
  // output
  std::string format = "text";
  int precision = -1;
  std::string out;
  bool lattice = false;
  std::uint64_t cap = gtp::kDefaultPathCap;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gtp::InvalidInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw gtp::InvalidInput(path + ": " + e.what());
  }
}

Rational need(const std::string& text, const char* flag) {
  if (text.empty()) throw gtp::InvalidInput(std::string("missing --") + flag);
  return gtp::parse_rational(text);
}

Vec rational_list(const std::string& text, const char* flag) {
  if (text.empty()) throw gtp::InvalidInput(std::string("missing --") + flag);
  Vec out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(gtp::parse_rational(item));
  return out;
}

int need_horizon(const Options& o) {
  if (o.n < 1) throw gtp::InvalidInput("missing or non-positive --n");
  return o.n;
}

std::optional<int> precision(const Options& o) {
  return o.precision >= 0 ? std::optional<int>(o.precision) : std::nullopt;
}

// ---------------------------------------------------------------------------
// Game and payoff

struct Problem {
  gtp::GameSpec spec;
  json document;  // the --spec file, if any
};

Problem load_game(const Options& o) {
  int sources = !o.spec_path.empty() + o.crr + !o.game.empty();
  if (sources != 1) throw gtp::InvalidInput("give exactly one of --spec, --crr, --game");
  Problem pr;
  if (!o.spec_path.empty()) {
    pr.document = read_json(o.spec_path);
    pr.spec = gtp::io::game_from(pr.document.contains("game") ? pr.document.at("game") : pr.document);
    return pr;
  }
  if (o.crr) {
    pr.spec = gtp::CrrSpec{need(o.s0, "s0"), need(o.u, "u"), need(o.d, "d"), need(o.r, "r"), need_horizon(o)}.game();
    return pr;
  }
  const std::string& g = o.game;
  if (g == "coin") {
    pr.spec = gtp::biased_coin_game(need(o.a, "a"), need(o.b, "b"), need_horizon(o));
  } else if (g == "rescaled") {
    pr.spec = gtp::rescaled_coin_game(need(o.p, "p"), need_horizon(o));
  } else if (g == "urn" || g == "polya") {
    gtp::UrnParams urn{o.nu1, o.nu2, g == "urn" ? -1 : o.c};
    if (urn.added == -1) pr.spec = gtp::forecast_game(gtp::UrnForecaster{urn}, need_horizon(o));
    else pr.spec = gtp::forecast_game(gtp::PolyaForecaster{urn}, need_horizon(o));
  } else if (g == "staircase") {
    auto st = gtp::tail_ratios(rational_list(o.q, "q"));
    pr.spec = gtp::forecast_game(gtp::StaircaseForecaster{st}, o.n > 0 ? o.n : st.horizon());
  } else if (g == "multilabel") {
    Vec p = rational_list(o.p, "p");
    pr.spec = gtp::multilabel_game(static_cast<int>(p.size()), gtp::ConstantVector{p}, need_horizon(o));
  } else if (g == "ticket") {
    pr.spec = gtp::ticket_game(rational_list(o.values, "values"), need(o.price, "price"), need_horizon(o));
  } else {
    throw gtp::InvalidInput("unknown --game '" + g + "'");
  }
  return pr;
}

std::string state_label(const gtp::StatePoint& s) {
  if (s.size() == 1) return gtp::to_string(s[0]);
  return "(" + gtp::join(s) + ")";
}

gtp::Payoff table_payoff(const json& table) {
  if (!table.is_object()) throw gtp::InvalidInput("payoff table must map states to values");
  std::map<std::string, Rational> values;
  for (const auto& [state, v] : table.items()) values.emplace(state, gtp::io::rational_from(v));
  return [values](const gtp::StatePoint& s) -> Rational {
    auto it = values.find(state_label(s));
    if (it == values.end()) throw gtp::InvalidInput("payoff table has no entry for state " + state_label(s));
    return it->second;
  };
}

// call:K, put:K, digital:K, constant:c, identity, square, table:FILE, or a
// JSON object mapping terminal states to values.
gtp::Payoff parse_payoff(const std::string& text) {
  if (!text.empty() && text.front() == '{') return table_payoff(json::parse(text));
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "call") return gtp::call_payoff(need(arg, "payoff call:K"));
  if (kind == "put") return gtp::put_payoff(need(arg, "payoff put:K"));
  if (kind == "digital") return gtp::digital_payoff(need(arg, "payoff digital:K"));
  if (kind == "constant") return gtp::constant_payoff(need(arg, "payoff constant:c"));
  if (kind == "identity") return gtp::scalar_payoff([](const Rational& s) -> Rational { return s; });
  if (kind == "square") return gtp::scalar_payoff([](const Rational& s) -> Rational { return s * s; });
  if (kind == "table") return table_payoff(read_json(arg));
  throw gtp::InvalidInput("unknown payoff '" + text + "'");
}

gtp::Payoff load_payoff(const Options& o, const Problem& pr) {
  if (!o.payoff.empty()) return parse_payoff(o.payoff);
  if (pr.document.contains("payoff")) {
    const json& p = pr.document.at("payoff");
    if (p.is_string()) return parse_payoff(p.get<std::string>());
    if (p.is_object() && p.contains("table")) return table_payoff(p.at("table"));
    return table_payoff(p);
  }
  throw gtp::InvalidInput("missing --payoff");
}

// ---------------------------------------------------------------------------
// Output

class Output {
 public:
  explicit Output(const Options& o) : format_(o.format) {
    if (!o.out.empty()) {
      file_.open(o.out);
      if (!file_) throw gtp::InvalidInput("cannot write " + o.out);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  bool json_mode() const { return format_ == "json"; }
  bool csv_mode() const { return format_ == "csv"; }
  void emit(const json& j) { stream() << j.dump(2) << "\n"; }

 private:
  std::string format_;
  std::ofstream file_;
};

// ---------------------------------------------------------------------------
// Commands

template <typename Point>
int emit_pmf(const gtp::Pmf<Point>& pmf, const Options& o, const std::optional<bool>& agrees) {
  Output out(o);
  if (out.json_mode()) {
    json j = gtp::io::pmf_json(pmf, precision(o));
    if (agrees) j["check"] = {{"agrees", *agrees}};
    out.emit(j);
  } else {
    out.stream() << gtp::io::pmf_csv(pmf, precision(o));
    if (agrees) out.stream() << "# check: " << (*agrees ? "agrees with" : "DIFFERS from") << " path enumeration\n";
  }
  return agrees && !*agrees ? kVerifyFailed : kOk;
}

int cmd_pmf(const Options& o) {
  if (o.family.empty()) {
    Problem pr = load_game(o);
    if (pr.spec.moves.kind == gtp::MoveKind::multilabel)
      return emit_pmf(gtp::pmf_by_enumeration(pr.spec, gtp::stat::counts, o.cap), o, std::nullopt);
    return emit_pmf(gtp::pmf_by_enumeration(pr.spec, gtp::stat::terminal_state, o.cap), o, std::nullopt);
  }
  const std::string& f = o.family;
  if (f == "multinomial") {
    Vec p = rational_list(o.p, "p");
    auto pmf = gtp::multinomial_pmf(need_horizon(o), p);
    std::optional<bool> agrees;
    if (o.check) {
      auto game = gtp::multilabel_game(static_cast<int>(p.size()), gtp::ConstantVector{p}, o.n);
      agrees = gtp::same_law(pmf, gtp::pmf_by_enumeration(game, gtp::stat::counts, o.cap));
    }
    return emit_pmf(pmf, o, agrees);
  }
  gtp::ScalarPmf pmf;
  std::optional<gtp::GameSpec> game;
  if (f == "binomial") {
    pmf = gtp::binomial_pmf(need_horizon(o), need(o.p, "p"));
    game = gtp::rescaled_coin_game(need(o.p, "p"), o.n);
  } else if (f == "hypergeometric") {
    pmf = gtp::hypergeometric_pmf(o.nu1, o.nu2, need_horizon(o));
    game = gtp::forecast_game(gtp::UrnForecaster{{o.nu1, o.nu2, -1}}, o.n);
  } else if (f == "polya") {
    gtp::UrnParams urn{o.nu1, o.nu2, o.c};
    pmf = gtp::polya_pmf(o.nu1, o.nu2, o.c, need_horizon(o));
    if (urn.added == -1) game = gtp::forecast_game(gtp::UrnForecaster{urn}, o.n);
    else game = gtp::forecast_game(gtp::PolyaForecaster{urn}, o.n);
  } else if (f == "staircase") {
    Vec q = rational_list(o.q, "q");
    auto st = gtp::tail_ratios(q);
    pmf = gtp::pmf_from_weights(q);
    if (st.horizon() > 0) game = gtp::forecast_game(gtp::StaircaseForecaster{st}, st.horizon());
  } else {
    throw gtp::InvalidInput("unknown --family '" + f + "'");
  }
  std::optional<bool> agrees;
  if (o.check) {
    gtp::ScalarPmf derived = game ? gtp::pmf_by_enumeration(*game, gtp::stat::successes, o.cap)
                                  : gtp::ScalarPmf(gtp::ScalarPmf::map_type{{0, Rational(1)}});
    agrees = gtp::same_law(pmf, derived);
  }
  return emit_pmf(pmf, o, agrees);
}

int cmd_price(const Options& o) {
  Problem pr = load_game(o);
  auto payoff = load_payoff(o, pr);
  auto lat = gtp::backward_induct(pr.spec, payoff);
  Rational price = gtp::initial_price(lat);
  Output out(o);
  auto prec = precision(o);
  if (out.json_mode()) {
    json j = {{"price", gtp::io::rational_json(price)}};
    if (prec) j["decimal"] = gtp::to_decimal(price, *prec);
    if (o.lattice) j["lattice"] = gtp::io::lattice_json(lat, pr.spec);
    out.emit(j);
  } else if (out.csv_mode()) {
    out.stream() << "price" << (prec ? ",decimal" : "") << "\n" << gtp::to_string(price);
    if (prec) out.stream() << "," << gtp::to_decimal(price, *prec);
    out.stream() << "\n";
    if (o.lattice) {
      out.stream() << "n,state,value\n";
      for (int n = 0; n <= lat.horizon; ++n)
        for (const auto& [key, v] : lat.layers[static_cast<std::size_t>(n)])
          out.stream() << n << ",\"" << gtp::render_state(pr.spec, key) << "\"," << gtp::to_string(v) << "\n";
    }
  } else {
    out.stream() << gtp::to_string(price);
    if (prec) out.stream() << " (" << gtp::to_decimal(price, *prec) << ")";
    out.stream() << "\n";
  }
  return kOk;
}

int cmd_hedge(const Options& o) {
  Problem pr = load_game(o);
  auto plan = gtp::delta_hedge(gtp::backward_induct(pr.spec, load_payoff(o, pr)), pr.spec);
  Output out(o);
  if (out.json_mode()) out.emit(gtp::io::plan_json(plan, pr.spec));
  else out.stream() << gtp::io::plan_csv(plan, pr.spec);
  return kOk;
}

int cmd_verify(const Options& o) {
  Problem pr = load_game(o);
  auto payoff = load_payoff(o, pr);
  gtp::ReplicationPlan plan = o.plan_path.empty()
                                  ? gtp::delta_hedge(gtp::backward_induct(pr.spec, payoff), pr.spec)
                                  : gtp::io::plan_from(read_json(o.plan_path), pr.spec);
  auto report = gtp::verify_replication(plan, pr.spec, payoff, o.cap);
  Output out(o);
  if (out.json_mode()) {
    json j = gtp::io::replication_json(report);
    j["initial_capital"] = gtp::io::rational_json(plan.initial_capital);
    out.emit(j);
  } else if (out.csv_mode()) {
    out.stream() << "paths,max_residual,ok\n"
                 << report.paths << "," << gtp::to_string(report.max_residual) << ","
                 << (report.ok() ? "true" : "false") << "\n";
  } else {
    out.stream() << report.paths << " paths, max residual " << gtp::to_string(report.max_residual) << "\n";
    for (const auto& v : report.violations) {
      out.stream() << "  violated on moves";
      for (int m : v.moves) out.stream() << " " << m;
      out.stream() << ": residual " << gtp::to_string(v.residual) << "\n";
    }
  }
  return report.ok() ? kOk : kVerifyFailed;
}

int cmd_bounds(const Options& o) {
  Problem pr = load_game(o);
  auto b = gtp::upper_lower(pr.spec, load_payoff(o, pr));
  Output out(o);
  auto prec = precision(o);
  if (out.json_mode()) {
    out.emit(gtp::io::bounds_json(b, prec));
  } else if (out.csv_mode()) {
    out.stream() << "upper,lower,gap\n"
                 << gtp::to_string(b.upper) << "," << gtp::to_string(b.lower) << "," << gtp::to_string(b.gap)
                 << "\n";
  } else {
    auto line = [&](const char* name, const Rational& v) {
      out.stream() << name << " " << gtp::to_string(v);
      if (prec) out.stream() << " (" << gtp::to_decimal(v, *prec) << ")";
      out.stream() << "\n";
    };
    line("upper", b.upper);
    line("lower", b.lower);
    line("gap", b.gap);
  }
  return kOk;
}

int cmd_reduce_crr(const Options& o) {
  Problem pr = load_game(o);
  const auto& g = pr.spec;
  if (g.moves.kind != gtp::MoveKind::crr_factors) throw gtp::InvalidInput("reduce-crr needs a crr game");
  gtp::CrrSpec market{g.origin, g.moves.up, g.moves.down, g.update.interest, g.horizon};
  auto red = gtp::crr_to_multilabel(market);

  json rounds = json::array();
  std::ostringstream csv;
  csv << "round,ups,downs,x_up,x_down,p_up,p_down\n";
  for (int n = 1; n <= market.horizon; ++n)
    for (long ups = 0; ups < n; ++ups) {
      long downs = n - 1 - ups;
      Vec x = red.increments(n, ups, downs);
      Vec quote = gtp::expand(red.game, {ups, downs}).quote;
      rounds.push_back({{"round", n}, {"ups", ups}, {"downs", downs}, {"increments", gtp::io::vec_json(x)},
                        {"quote", gtp::io::vec_json(quote)}});
      csv << n << "," << ups << "," << downs << "," << gtp::join(x) << "," << gtp::join(quote) << "\n";
    }
  json j = {{"game", gtp::io::game_json(red.game)}, {"rounds", rounds}};
  bool agrees = true;
  if (!o.payoff.empty() || pr.document.contains("payoff")) {
    auto payoff = load_payoff(o, pr);
    Rational closed = gtp::crr_price(market, payoff);
    Rational reduced = gtp::initial_price(gtp::backward_induct(red.game, red.reduced_payoff(payoff)));
    agrees = closed == reduced;
    j["price"] = {{"crr", gtp::io::rational_json(closed)}, {"reduced", gtp::io::rational_json(reduced)},
                  {"agrees", agrees}};
  }
  Output out(o);
  if (out.csv_mode()) out.stream() << csv.str();
  else out.emit(j);
  return agrees ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------------------

void add_game_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--spec", o.spec_path, "GameSpec JSON file (optionally {\"game\": ..., \"payoff\": ...})");
  cmd->add_flag("--crr", o.crr, "inline Cox-Ross-Rubinstein market (--s0 --u --d --r --n)");
  cmd->add_option("--game", o.game, "inline game: coin, rescaled, urn, polya, staircase, multilabel, ticket");
  cmd->add_option("--s0", o.s0, "initial asset price");
  cmd->add_option("--u", o.u, "up factor");
  cmd->add_option("--d", o.d, "down factor");
  cmd->add_option("--r", o.r, "growth factor per round (1 + interest rate)");
  cmd->add_option("--a", o.a, "up offset of the coin game")->capture_default_str();
  cmd->add_option("--b", o.b, "down offset of the coin game")->capture_default_str();
  cmd->add_option("--p", o.p, "price, or comma-separated simplex vector");
  cmd->add_option("--q", o.q, "comma-separated target pmf on 0..N");
  cmd->add_option("--values", o.values, "comma-separated ticket move values");
  cmd->add_option("--price", o.price, "ticket price");
  cmd->add_option("--n", o.n, "horizon N");
  cmd->add_option("--nu1", o.nu1, "red balls");
  cmd->add_option("--nu2", o.nu2, "black balls");
  cmd->add_option("--c", o.c, "balls added per draw (-1 without replacement)");
  cmd->add_option("--cap", o.cap, "path enumeration cap")->capture_default_str();
}

void add_output_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--precision", o.precision, "also print decimals with this many digits");
  cmd->add_option("--out", o.out, "write to this file instead of stdout");
}

void add_payoff_option(CLI::App* cmd, Options& o) {
  cmd->add_option("--payoff", o.payoff,
                  "call:K, put:K, digital:K, constant:c, identity, square, table:FILE or a JSON state table");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact pricing, hedging and bounds for finite forecasting games"};
  app.require_subcommand(1);
  Options o;

  auto* pmf = app.add_subcommand("pmf", "law of S_N from a closed form or by path enumeration");
  pmf->add_option("--family", o.family, "binomial, hypergeometric, polya, staircase or multinomial");
  pmf->add_flag("--check", o.check, "also derive the law from the game and report agreement");
  add_game_options(pmf, o);
  add_output_options(pmf, o);

  auto* price = app.add_subcommand("price", "initial price by backward induction");
  add_game_options(price, o);
  add_payoff_option(price, o);
  add_output_options(price, o);
  price->add_flag("--lattice", o.lattice, "include every lattice node");

  auto* hedge = app.add_subcommand("hedge", "delta-hedge table");
  add_game_options(hedge, o);
  add_payoff_option(hedge, o);
  add_output_options(hedge, o);

  auto* verify = app.add_subcommand("verify", "replay a hedge on every admissible path");
  add_game_options(verify, o);
  add_payoff_option(verify, o);
  add_output_options(verify, o);
  verify->add_option("--plan", o.plan_path, "hedge JSON to verify (default: the delta hedge)");

  auto* bounds = app.add_subcommand("bounds", "upper and lower expected values");
  add_game_options(bounds, o);
  add_payoff_option(bounds, o);
  add_output_options(bounds, o);

  auto* reduce = app.add_subcommand("reduce-crr", "rewrite a crr game as a two-label ticket game");
  add_game_options(reduce, o);
  add_payoff_option(reduce, o);
  add_output_options(reduce, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (pmf->parsed()) return cmd_pmf(o);
    if (price->parsed()) return cmd_price(o);
    if (hedge->parsed()) return cmd_hedge(o);
    if (verify->parsed()) return cmd_verify(o);
    if (bounds->parsed()) return cmd_bounds(o);
    if (reduce->parsed()) return cmd_reduce_crr(o);
  } catch (const gtp::ArbitrageError& e) {
    std::cerr << "gtp: " << e.what() << "\n";
    std::cout << json{{"arbitrage", gtp::io::certificate_json(e.certificate())}}.dump(2) << "\n";
    return kArbitrage;
  } catch (const gtp::EnumerationCapExceeded& e) {
    std::cerr << "gtp: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const std::exception& e) {
    std::cerr << "gtp: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
