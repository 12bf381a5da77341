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
#include <type_traits>
#include <vector>

#include "gtp/errors.hpp"
#include "gtp/pmf.hpp"
#include "gtp/rational.hpp"

namespace gtp {

/// r (r-1) ... (r-k+1) / k! for rational r.
inline Rational generalized_binomial(const Rational& r, long k) {
  if (k < 0) throw InvalidInput("generalized_binomial: k must be nonnegative");
  Rational out = 1;
  for (long i = 0; i < k; ++i) out *= (r - i) / (i + 1);
  return out;
}

inline mpz_class binomial(long n, long k) {
  mpz_class out;
  if (k < 0 || k > n) return 0;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

inline ScalarPmf binomial_pmf(long trials, const Rational& p) {
  if (trials < 0) throw InvalidInput("binomial_pmf: negative number of trials");
  if (sgn(p) < 0 || p > 1) throw InvalidInput("binomial_pmf: p outside [0,1]");
  ScalarPmf::map_type w;
  for (long m = 0; m <= trials; ++m)
    w[m] = Rational(binomial(trials, m)) * pow(p, static_cast<unsigned>(m)) *
           pow(1 - p, static_cast<unsigned>(trials - m));
  return ScalarPmf(std::move(w));
}

/// Draws without replacement, on max(0, N - black) <= m <= min(red, N).
inline ScalarPmf hypergeometric_pmf(long red, long black, long draws) {
  if (red < 0 || black < 0 || draws < 0)
    throw InvalidInput("hypergeometric_pmf: negative parameter");
  if (red + black < draws) throw InvalidInput("hypergeometric_pmf: red + black < draws");
  ScalarPmf::map_type w;
  const Rational total(binomial(red + black, draws));
  for (long m = std::max(0L, draws - black); m <= std::min(red, draws); ++m)
    w[m] = Rational(binomial(red, m) * binomial(black, draws - m)) / total;
  return ScalarPmf(std::move(w));
}

/// Polya urn law written with generalized binomial coefficients over the
/// full range m = 0..N. added = 0 is the binomial law with p = red/(red+black).
inline ScalarPmf polya_pmf(long red, long black, long added, long draws) {
  if (draws < 0) throw InvalidInput("polya_pmf: negative number of draws");
  if (added == 0) {
    if (red + black <= 0) throw InvalidInput("polya_pmf: empty urn");
    return binomial_pmf(draws, make_rational(red, red + black));
  }
  const Rational c(added);
  const Rational denom = generalized_binomial(Rational(-(red + black)) / c, draws);
  if (sgn(denom) == 0) throw InvalidInput("polya_pmf: vanishing normalizing coefficient");
  ScalarPmf::map_type w;
  for (long m = 0; m <= draws; ++m)
    w[m] = generalized_binomial(Rational(-red) / c, m) *
           generalized_binomial(Rational(-black) / c, draws - m) / denom;
  return ScalarPmf(std::move(w));
}

/// Multinomial law over compositions (m_1..m_d) with sum N, in
/// lexicographic order.
inline VectorPmf multinomial_pmf(long trials, const Vec& p) {
  if (p.empty()) throw InvalidInput("multinomial_pmf: empty probability vector");
  for (const auto& x : p)
    if (sgn(x) < 0) throw InvalidInput("multinomial_pmf: negative probability");
  if (sum(p) != 1) throw InvalidInput("multinomial_pmf: probabilities do not sum to 1");

  VectorPmf::map_type w;
  mpz_class n_fact;
  mpz_fac_ui(n_fact.get_mpz_t(), static_cast<unsigned long>(trials));
  std::vector<long> comp(p.size(), 0);
  auto fill = [&](auto&& self, std::size_t i, long left) -> void {
    if (i + 1 == p.size()) {
      comp[i] = left;
      Rational weight(n_fact);
      for (std::size_t j = 0; j < p.size(); ++j) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(comp[j]));
        weight *= pow(p[j], static_cast<unsigned>(comp[j])) / Rational(f);
      }
      w[comp] = weight;
      return;
    }
    for (long m = 0; m <= left; ++m) {
      comp[i] = m;
      self(self, i + 1, left - m);
    }
  };
  fill(fill, 0, trials);
  return VectorPmf(std::move(w));
}

/// Sum of payoff(m) * weight(m) over the support.
template <typename Point, typename F>
Rational expectation(const Pmf<Point>& pmf, F&& payoff) {
  using R = std::invoke_result_t<F&, const Point&>;
  static_assert(std::is_same_v<R, Rational> || std::is_integral_v<R>,
                "payoff must return Rational; annotate the lambda with -> Rational");
  Rational out = 0;
  for (const auto& [point, w] : pmf) out += w * Rational(payoff(point));
  return out;
}

/// Pmf on {0..N} from a weight vector indexed by m.
inline ScalarPmf pmf_from_weights(const std::vector<Rational>& q) {
  ScalarPmf::map_type w;
  for (std::size_t m = 0; m < q.size(); ++m) w[static_cast<long>(m)] = q[m];
  return ScalarPmf(std::move(w));
}

}  // namespace gtp
