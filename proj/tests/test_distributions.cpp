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

#include "gtp/distributions.hpp"

#include <gtest/gtest.h>

#include "gtp/oracle.hpp"
#include "test_support.hpp"

namespace gtp {
namespace {

using testing::q;

ScalarPmf scalar(std::initializer_list<std::pair<const long, Rational>> w) {
  return ScalarPmf(ScalarPmf::map_type(w));
}

ScalarPmf from_law(const std::map<long, Rational>& law) { return ScalarPmf(ScalarPmf::map_type(law)); }

TEST(GeneralizedBinomial, Values) {
  EXPECT_EQ(generalized_binomial(q("-1/2"), 2), q("3/8"));
  EXPECT_EQ(generalized_binomial(q("17/3"), 0), 1);
  EXPECT_EQ(generalized_binomial(5, 2), 10);
  for (long n = 0; n <= 10; ++n)
    for (long k = 0; k <= 12; ++k)
      EXPECT_EQ(generalized_binomial(n, k), Rational(testing::pascal(n, k)));
}

TEST(BinomialPmf, Values) {
  EXPECT_EQ(binomial_pmf(2, q("1/2")), scalar({{0, q("1/4")}, {1, q("1/2")}, {2, q("1/4")}}));
  EXPECT_EQ(binomial_pmf(1, q("1/3")), scalar({{0, q("2/3")}, {1, q("1/3")}}));
  EXPECT_TRUE(same_law(binomial_pmf(5, 0), scalar({{0, 1}})));
  EXPECT_THROW(binomial_pmf(3, q("4/3")), InvalidInput);
}

TEST(HypergeometricPmf, Values) {
  EXPECT_EQ(hypergeometric_pmf(2, 2, 2), scalar({{0, q("1/6")}, {1, q("2/3")}, {2, q("1/6")}}));
  EXPECT_EQ(hypergeometric_pmf(5, 0, 3), scalar({{3, 1}}));
  EXPECT_EQ(hypergeometric_pmf(1, 1, 1), scalar({{0, q("1/2")}, {1, q("1/2")}}));
  EXPECT_THROW(hypergeometric_pmf(1, 1, 3), InvalidInput);
}

TEST(PolyaPmf, Values) {
  EXPECT_EQ(polya_pmf(1, 1, 1, 2), scalar({{0, q("1/3")}, {1, q("1/3")}, {2, q("1/3")}}));
  EXPECT_EQ(polya_pmf(1, 2, 0, 4), binomial_pmf(4, q("1/3")));
  EXPECT_THROW(polya_pmf(1, 1, -1, 3), InvalidInput);
}

TEST(MultinomialPmf, Values) {
  Rational third = q("1/3");
  auto m = multinomial_pmf(2, Vec{third, third, third});
  EXPECT_EQ(m.weight({1, 1, 0}), q("2/9"));
  EXPECT_EQ(m.size(), 6u);
  auto point = multinomial_pmf(4, Vec{1, 0, 0});
  EXPECT_TRUE(same_law(point, VectorPmf(VectorPmf::map_type{{{4, 0, 0}, Rational(1)}})));
}

TEST(Expectation, Values) {
  EXPECT_EQ(expectation(binomial_pmf(2, q("1/2")), [](long m) -> Rational { return (2 * m - 2) * (2 * m - 2); }), 2);
  EXPECT_EQ(expectation(hypergeometric_pmf(3, 4, 5), [](long) -> Rational { return q("5/7"); }), q("5/7"));
  // |2m - N| / N <= 1/2 with N = 4
  auto inside = [](long m) -> Rational { return 2 * std::abs(2 * m - 4) <= 4 ? 1 : 0; };
  EXPECT_EQ(expectation(binomial_pmf(4, q("1/2")), inside), q("7/8"));
}

TEST(Pmf, Validation) {
  EXPECT_THROW(scalar({{0, q("1/2")}}), InvalidInput);
  EXPECT_THROW(scalar({{0, q("3/2")}, {1, q("-1/2")}}), InvalidInput);
  EXPECT_EQ(pmf_from_weights({q("1/2"), 0, q("1/2")}).size(), 3u);
}

TEST(Degenerations, PolyaSpecialCases) {
  for (long red = 0; red <= 8; ++red)
    for (long black = 0; black <= 8; ++black)
      for (long n = 0; n <= std::min(8L, red + black); ++n) {
        EXPECT_TRUE(same_law(polya_pmf(red, black, -1, n), hypergeometric_pmf(red, black, n)))
            << red << " " << black << " " << n;
        if (red + black > 0) {
          EXPECT_EQ(polya_pmf(red, black, 0, n), binomial_pmf(n, make_rational(red, red + black)));
        }
      }
}

TEST(Degenerations, TwoLabelMultinomialIsBinomial) {
  for (long n = 0; n <= 8; ++n)
    for (const char* p : {"0", "1/5", "1/2", "2/3", "1"}) {
      auto m = multinomial_pmf(n, Vec{q(p), 1 - q(p)});
      EXPECT_EQ(m.map([](const std::vector<long>& c) { return c[0]; }), binomial_pmf(n, q(p)));
    }
}

// Closed forms against the independent bit-string oracle and the game
// enumeration oracle.
TEST(OracleAgreement, Binomial) {
  for (int n = 0; n <= 8; ++n)
    for (const char* ps : {"0", "1/7", "1/3", "1/2", "5/6", "1"}) {
      Rational p = q(ps);
      auto closed = binomial_pmf(n, p);
      auto brute = from_law(testing::brute_binary_law(n, [&](int, long) { return p; }));
      EXPECT_TRUE(same_law(closed, brute));
      if (n > 0) {
        EXPECT_TRUE(same_law(closed, pmf_by_enumeration(rescaled_coin_game(p, n), stat::successes)));
      }
    }
}

TEST(OracleAgreement, Hypergeometric) {
  for (long red = 0; red <= 8; ++red)
    for (long black = 0; black <= 8; ++black)
      for (int n = 1; n <= std::min(8L, red + black); ++n) {
        auto closed = hypergeometric_pmf(red, black, n);
        auto brute = from_law(testing::brute_binary_law(n, [&](int k, long s) {
          Rational p = Rational(red - s) / (red + black - (k - 1));
          return sgn(p) < 0 ? Rational(0) : p;
        }));
        EXPECT_TRUE(same_law(closed, brute));
        GameSpec g = forecast_game(UrnForecaster{{red, black, -1}}, n);
        EXPECT_TRUE(same_law(closed, pmf_by_enumeration(g, stat::successes)));
      }
}

TEST(OracleAgreement, Polya) {
  for (long c : {-1L, 0L, 1L, 2L})
    for (long red = 1; red <= 8; ++red)
      for (long black = 1; black <= 8; ++black)
        for (int n = 1; n <= 8; ++n) {
          if (c == -1 && red + black < n) continue;
          auto closed = polya_pmf(red, black, c, n);
          auto brute = from_law(testing::brute_binary_law(n, [&](int k, long s) {
            Rational p = Rational(red + c * s) / (red + black + (k - 1) * c);
            return sgn(p) < 0 ? Rational(0) : p;
          }));
          EXPECT_TRUE(same_law(closed, brute)) << c << " " << red << " " << black << " " << n;
          UrnParams up{red, black, c};
          GameSpec g = c == -1 ? forecast_game(UrnForecaster{up}, n) : forecast_game(PolyaForecaster{up}, n);
          EXPECT_TRUE(same_law(closed, pmf_by_enumeration(g, stat::successes)));
        }
}

TEST(OracleAgreement, Multinomial) {
  for (int d = 2; d <= 4; ++d)
    for (int n = 1; n <= 6; ++n) {
      Vec p;
      for (int i = 0; i < d; ++i) p.push_back(Rational(i + 1) / (d * (d + 1) / 2));
      auto closed = multinomial_pmf(n, p);
      std::map<std::vector<long>, Rational> law =
          testing::brute_multilabel_law(d, n, [&](int, const std::vector<long>&) { return p; });
      EXPECT_TRUE(same_law(closed, VectorPmf(VectorPmf::map_type(law.begin(), law.end()))));
      GameSpec g = multilabel_game(d, ConstantVector{p}, n);
      EXPECT_TRUE(same_law(closed, pmf_by_enumeration(g, stat::counts)));
    }
}

TEST(Normalization, AllFamilies) {
  for (long n = 0; n <= 8; ++n) {
    Rational total = 0;
    for (const auto& [m, w] : polya_pmf(3, 5, 2, n)) total += w;
    EXPECT_EQ(total, 1);
  }
}

}  // namespace
}  // namespace gtp
