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

#include "gtp/oracle.hpp"

#include <gtest/gtest.h>

#include <random>

#include "gtp/crr.hpp"
#include "gtp/distributions.hpp"
#include "gtp/lp.hpp"
#include "test_support.hpp"

namespace gtp {
namespace {

using testing::q;

Payoff identity() {
  return scalar_payoff([](const Rational& s) -> Rational { return s; });
}

Payoff square() {
  return scalar_payoff([](const Rational& s) -> Rational { return s * s; });
}

GameSpec three_outcome(int horizon) { return ticket_game(Vec{0, 1, 2}, 1, horizon); }

// Pays 1 when every round moved to the top value.
Payoff all_top(int horizon) {
  return scalar_payoff([horizon](const Rational& s) -> Rational { return s == 2 * horizon ? 1 : 0; });
}

// Admissible paths of a unit-growth game with, per round, the history node
// the stake is chosen at and the capital increment per unit stake.
struct TreePath {
  std::vector<int> nodes;
  std::vector<Vec> gains;
  StatePoint state;
};

std::vector<TreePath> tree_paths(const GameSpec& g, std::map<std::vector<int>, int>& ids) {
  std::vector<TreePath> out;
  TreePath cur;
  std::vector<int> hist;
  auto walk = [&](auto&& self, const NodeKey& key) -> void {
    if (static_cast<int>(hist.size()) == g.horizon) {
      cur.state = state_of(g, key);
      out.push_back(cur);
      return;
    }
    auto lr = expand(g, key);
    EXPECT_EQ(lr.growth, 1);
    int id = ids.emplace(hist, static_cast<int>(ids.size())).first->second;
    for (const auto& br : lr.branches) {
      hist.push_back(br.move);
      cur.nodes.push_back(id);
      cur.gains.push_back(br.gain);
      self(self, br.child);
      cur.gains.pop_back();
      cur.nodes.pop_back();
      hist.pop_back();
    }
  };
  walk(walk, root_key(g));
  return out;
}

// Superhedging price over all history-dependent strategies as one linear
// program over the whole tree (upper) or its subhedging mirror (lower).
Rational whole_tree_value(const GameSpec& g, const Payoff& eta, bool upper) {
  std::map<std::vector<int>, int> ids;
  auto paths = tree_paths(g, ids);
  const std::size_t k = static_cast<std::size_t>(g.moves.stake_dimension());
  const std::size_t stakes = ids.size() * k;
  const std::size_t cols = 2 + 2 * stakes + paths.size();
  std::vector<Vec> a(paths.size(), Vec(cols, Rational(0)));
  Vec b(paths.size()), c(cols, Rational(0));
  c[0] = upper ? 1 : -1;
  c[1] = upper ? -1 : 1;
  for (std::size_t r = 0; r < paths.size(); ++r) {
    const auto& p = paths[r];
    a[r][0] = 1;
    a[r][1] = -1;
    for (std::size_t n = 0; n < p.nodes.size(); ++n)
      for (std::size_t i = 0; i < k; ++i) {
        std::size_t col = 2 + 2 * (static_cast<std::size_t>(p.nodes[n]) * k + i);
        a[r][col] += p.gains[n][i];
        a[r][col + 1] -= p.gains[n][i];
      }
    a[r][2 + 2 * stakes + r] = upper ? -1 : 1;
    b[r] = eta(p.state);
  }
  auto sol = lp::minimize(a, b, c);
  EXPECT_EQ(sol.status, lp::Status::optimal);
  return upper ? sol.objective : Rational(-sol.objective);
}

TEST(EnumeratePaths, FairCoin) {
  auto paths = enumerate_paths(rescaled_coin_game(q("1/2"), 2));
  ASSERT_EQ(paths.size(), 4u);
  for (const auto& p : paths) EXPECT_EQ(p.weight, q("1/4"));
}

TEST(EnumeratePaths, StaircaseTwoPoint) {
  auto paths = enumerate_paths(forecast_game(StaircaseForecaster{tail_ratios(Vec{q("1/2"), q("1/2")})}, 1));
  ASSERT_EQ(paths.size(), 2u);
  EXPECT_EQ(paths[0].moves, std::vector<int>{0});
  EXPECT_EQ(paths[1].moves, std::vector<int>{1});
  EXPECT_EQ(paths[0].weight, q("1/2"));
  EXPECT_EQ(paths[1].weight, q("1/2"));
}

TEST(EnumeratePaths, UrnSecondDrawForced) {
  auto paths = enumerate_paths(forecast_game(UrnForecaster{{1, 1, -1}}, 2));
  ASSERT_EQ(paths.size(), 2u);
  std::set<std::vector<int>> seen;
  for (const auto& p : paths) {
    seen.insert(p.moves);
    EXPECT_EQ(p.weight, q("1/2"));
  }
  EXPECT_EQ(seen, (std::set<std::vector<int>>{{0, 1}, {1, 0}}));
}

TEST(EnumeratePaths, CapIsARefusal) {
  EXPECT_THROW(enumerate_paths(fair_coin_game(21)), EnumerationCapExceeded);
  EXPECT_THROW(enumerate_paths(fair_coin_game(5), 16), EnumerationCapExceeded);
  EXPECT_EQ(enumerate_paths(fair_coin_game(4), 16).size(), 16u);
}

TEST(EnumeratePaths, WeightsSumToOne) {
  std::vector<GameSpec> games{forecast_game(PolyaForecaster{{2, 5, 3}}, 7),
                              forecast_game(UrnForecaster{{2, 6, -1}}, 8),
                              multilabel_game(3, ConstantVector{Vec{q("1/6"), q("1/2"), q("1/3")}}, 5),
                              CrrSpec{4, 2, q("1/2"), q("5/4"), 6}.game()};
  for (const auto& g : games) {
    Rational total = 0;
    for (const auto& p : enumerate_paths(g)) {
      EXPECT_GT(p.weight, 0);
      total += p.weight;
    }
    EXPECT_EQ(total, 1);
  }
}

TEST(PmfByEnumeration, Families) {
  EXPECT_EQ(pmf_by_enumeration(rescaled_coin_game(q("2/5"), 6), stat::successes), binomial_pmf(6, q("2/5")));
  EXPECT_EQ(pmf_by_enumeration(forecast_game(UrnForecaster{{3, 4, -1}}, 5), stat::successes),
            hypergeometric_pmf(3, 4, 5));
  auto point = forecast_game(StaircaseForecaster{tail_ratios(Vec{0, 0, 1})}, 2);
  EXPECT_EQ(pmf_by_enumeration(point, stat::successes), ScalarPmf(ScalarPmf::map_type{{2, Rational(1)}}));
}

TEST(UpperLower, ThreeOutcomeTicket) {
  auto b = upper_lower(three_outcome(1), all_top(1));
  EXPECT_EQ(b.upper, q("1/2"));
  EXPECT_EQ(b.lower, 0);
  EXPECT_EQ(b.gap, q("1/2"));
  ASSERT_EQ(b.witnesses.size(), 1u);
  EXPECT_EQ(b.witnesses[0].upper_stake, Vec{q("1/2")});
  // any lower stake in [0, 1] attains 0
  const Rational& m = b.witnesses[0].lower_stake.at(0);
  EXPECT_TRUE(sgn(m) >= 0 && m <= 1);
}

// The witness stakes super- and subhedge every child.
TEST(UpperLower, WitnessStakesHedge) {
  GameSpec g = three_outcome(1);
  Payoff eta = scalar_payoff([](const Rational& s) -> Rational { return s * s - 3 * s + 1; });
  auto b = upper_lower(g, eta);
  auto lr = expand(g, root_key(g));
  for (const auto& br : lr.branches) {
    Rational v = eta(state_of(g, br.child));
    EXPECT_GE(b.upper + dot(b.witnesses[0].upper_stake, br.gain), v);
    EXPECT_LE(b.lower + dot(b.witnesses[0].lower_stake, br.gain), v);
  }
}

TEST(UpperLower, CompleteGamesCollapse) {
  std::vector<GameSpec> games{fair_coin_game(4), forecast_game(UrnForecaster{{2, 3, -1}}, 5),
                              CrrSpec{4, 2, q("1/2"), q("5/4"), 4}.game()};
  for (const auto& g : games) {
    auto b = upper_lower(g, square());
    EXPECT_EQ(b.upper, b.lower);
    EXPECT_EQ(b.upper, initial_price(backward_induct(g, square())));
  }
}

TEST(UpperLower, Constant) {
  auto b = upper_lower(three_outcome(3), constant_payoff(q("9/7")));
  EXPECT_EQ(b.upper, q("9/7"));
  EXPECT_EQ(b.lower, q("9/7"));
}

TEST(Coherence, AdmissibleGames) {
  for (const char* p : {"0", "1/3", "1"}) EXPECT_TRUE(coherence_check(rescaled_coin_game(q(p), 4)).coherent);
  EXPECT_TRUE(coherence_check(CrrSpec{4, 2, q("1/2"), q("5/4"), 5}.game()).coherent);
  EXPECT_TRUE(coherence_check(three_outcome(3)).coherent);
}

TEST(Coherence, MultilabelOutsideSimplex) {
  GameSpec g = multilabel_game(3, ConstantVector{Vec{q("1/2"), q("2/3"), q("-1/6")}}, 2);
  auto v = coherence_check(g);
  ASSERT_FALSE(v.coherent);
  ASSERT_TRUE(v.certificate.has_value());
  const auto& cert = *v.certificate;
  EXPECT_GT(cert.guaranteed_gain, 0);
  Vec price{q("1/2"), q("2/3"), q("-1/6")};
  for (int i = 0; i < 3; ++i) {
    Vec e(3, Rational(0));
    e[static_cast<std::size_t>(i)] = 1;
    Rational gain = step_capital(0, cert.stake, e, price, g.update);
    EXPECT_GE(gain, cert.guaranteed_gain);
  }
}

TEST(Coherence, TicketPriceOutsideRange) {
  GameSpec g = ticket_game(Vec{0, 1, 2}, 1, 2);
  g.forecaster = ConstantPrice{q("5/2")};
  auto v = coherence_check(g);
  ASSERT_FALSE(v.coherent);
  EXPECT_GT(v.certificate->guaranteed_gain, 0);
}

TEST(ReplicationBounds, Examples) {
  GameSpec coin = fair_coin_game(2);
  auto v = check_replication_bounds(coin, square(), delta_hedge(backward_induct(coin, square()), coin));
  EXPECT_TRUE(v.holds) << v.diagnostic;
  EXPECT_EQ(v.alpha, 2);

  GameSpec urn = forecast_game(UrnForecaster{{2, 2, -1}}, 3);
  auto c = check_replication_bounds(urn, constant_payoff(6), delta_hedge(backward_induct(urn, constant_payoff(6)), urn));
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.alpha, 6);

  GameSpec st = forecast_game(StaircaseForecaster{tail_ratios(Vec{q("1/4"), q("1/4"), q("1/2")})}, 2);
  auto s = check_replication_bounds(st, identity(), delta_hedge(backward_induct(st, identity()), st));
  EXPECT_TRUE(s.holds);
  EXPECT_EQ(s.upper, q("5/4"));
  EXPECT_EQ(s.lower, q("5/4"));
}

TEST(ReplicationBounds, RejectsNonReplicatingPlan) {
  GameSpec coin = fair_coin_game(2);
  auto plan = delta_hedge(backward_induct(coin, identity()), coin);
  auto v = check_replication_bounds(coin, square(), plan);
  EXPECT_FALSE(v.holds);
  EXPECT_FALSE(v.diagnostic.empty());
}

TEST(Properties, SymmetryAndOrder) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + trial % 3;
    GameSpec g = trial % 2 ? three_outcome(n) : ticket_game(Vec{-1, 0, 2, 3}, q("1/2"), n);
    std::map<Rational, Rational> table, bumped;
    Payoff eta = [&](const StatePoint& s) -> Rational {
      auto it = table.find(s[0]);
      if (it == table.end()) it = table.emplace(s[0], testing::random_rational(rng, -5, 5, 3)).first;
      return it->second;
    };
    Payoff neg = [&](const StatePoint& s) -> Rational { return -eta(s); };
    Payoff higher = [&](const StatePoint& s) -> Rational {
      auto it = bumped.find(s[0]);
      if (it == bumped.end()) it = bumped.emplace(s[0], testing::random_rational(rng, 0, 2, 4)).first;
      return eta(s) + it->second;
    };
    auto b = upper_lower(g, eta);
    auto m = upper_lower(g, neg);
    auto h = upper_lower(g, higher);
    EXPECT_GE(b.upper, b.lower);
    EXPECT_EQ(b.lower, -m.upper);
    EXPECT_EQ(b.upper, -m.lower);
    EXPECT_LE(b.upper, h.upper);
    EXPECT_LE(b.lower, h.lower);
  }
}

// The node-by-node recursion equals the value over all history-dependent
// strategies, computed as a single program over the whole tree.
TEST(HistoryIndependence, WholeTreeProgram) {
  std::mt19937_64 rng(43);
  for (int n = 1; n <= 3; ++n) {
    for (const GameSpec& g : {three_outcome(n), ticket_game(Vec{-1, 0, 2, 3}, q("1/2"), n)}) {
      for (int trial = 0; trial < 4; ++trial) {
        std::map<Rational, Rational> table;
        Payoff eta = [&](const StatePoint& s) -> Rational {
          auto it = table.find(s[0]);
          if (it == table.end()) it = table.emplace(s[0], testing::random_rational(rng, -4, 4, 2)).first;
          return it->second;
        };
        auto b = upper_lower(g, eta);
        EXPECT_EQ(whole_tree_value(g, eta, true), b.upper);
        EXPECT_EQ(whole_tree_value(g, eta, false), b.lower);
      }
    }
  }
}

// Direct search over history-dependent stakes on a grid of quarters.
TEST(HistoryIndependence, StakeGridSearch) {
  for (int n = 1; n <= 2; ++n) {
    GameSpec g = three_outcome(n);
    Payoff eta = all_top(n);
    std::map<std::vector<int>, int> ids;
    auto paths = tree_paths(g, ids);
    std::vector<Rational> grid;
    for (int k = -8; k <= 8; ++k) grid.push_back(make_rational(k, 4));
    std::vector<std::size_t> pick(ids.size(), 0);
    std::optional<Rational> best_upper, best_lower;
    while (true) {
      std::optional<Rational> need, allow;
      for (const auto& p : paths) {
        Rational k = 0;
        for (std::size_t r = 0; r < p.nodes.size(); ++r)
          k += grid[pick[static_cast<std::size_t>(p.nodes[r])]] * p.gains[r][0];
        Rational gap = eta(p.state) - k;
        if (!need || gap > *need) need = gap;
        if (!allow || gap < *allow) allow = gap;
      }
      if (!best_upper || *need < *best_upper) best_upper = need;
      if (!best_lower || *allow > *best_lower) best_lower = allow;
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == grid.size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
    auto b = upper_lower(g, eta);
    EXPECT_EQ(*best_upper, b.upper) << n;
    EXPECT_EQ(*best_lower, b.lower) << n;
  }
}

}  // namespace
}  // namespace gtp
