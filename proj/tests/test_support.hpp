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

// Independent reference computations for the test suites. Nothing here
// calls into the library: weights are multiplied out path by path over
// every sequence of moves.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace gtp::testing {

using Q = mpq_class;

inline Q q(const char* s) {
  Q v(s);
  v.canonicalize();
  return v;
}

inline Q qi(long n, long d = 1) {
  Q v(n, d);
  v.canonicalize();
  return v;
}

/// Pascal's triangle entry.
inline mpz_class pascal(long n, long k) {
  if (k < 0 || k > n) return 0;
  std::vector<mpz_class> row{1};
  for (long i = 0; i < n; ++i) {
    std::vector<mpz_class> next(row.size() + 1, 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      next[j] += row[j];
      next[j + 1] += row[j];
    }
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(k)];
}

/// Law of S_N in a {0,1} game with price(n, S_{n-1}), by looping over all
/// 2^N bit strings.
inline std::map<long, Q> brute_binary_law(int horizon, const std::function<Q(int, long)>& price) {
  std::map<long, Q> law;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << horizon); ++bits) {
    Q w = 1;
    long s = 0;
    for (int n = 1; n <= horizon; ++n) {
      Q p = price(n, s);
      bool one = (bits >> (n - 1)) & 1u;
      w *= one ? p : Q(1 - p);
      s += one;
    }
    if (sgn(w) != 0) law[s] += w;
  }
  return law;
}

/// Law of the label counts in a d-label game with price(n, counts).
inline std::map<std::vector<long>, Q> brute_multilabel_law(
    int labels, int horizon, const std::function<std::vector<Q>(int, const std::vector<long>&)>& price) {
  std::map<std::vector<long>, Q> law;
  std::uint64_t total = 1;
  for (int n = 0; n < horizon; ++n) total *= static_cast<std::uint64_t>(labels);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<long> counts(static_cast<std::size_t>(labels), 0);
    Q w = 1;
    std::uint64_t c = code;
    for (int n = 1; n <= horizon; ++n) {
      auto label = static_cast<std::size_t>(c % static_cast<std::uint64_t>(labels));
      c /= static_cast<std::uint64_t>(labels);
      w *= price(n, counts)[label];
      ++counts[label];
      if (sgn(w) == 0) break;
    }
    if (sgn(w) != 0) law[counts] += w;
  }
  return law;
}

/// Random rational pmf on {0..n} with denominators up to `den`; roughly a
/// third of the interior points are zero.
inline std::vector<Q> random_pmf(std::mt19937_64& rng, int n, long den = 12) {
  std::uniform_int_distribution<long> pick(0, den);
  std::bernoulli_distribution zero(1.0 / 3.0);
  std::vector<Q> raw(static_cast<std::size_t>(n) + 1);
  Q total = 0;
  for (int m = 0; m <= n; ++m) {
    long v = (m < n && zero(rng)) ? 0 : pick(rng) + (m == n ? 1 : 0);
    raw[static_cast<std::size_t>(m)] = v;
    total += raw[static_cast<std::size_t>(m)];
  }
  for (auto& x : raw) x /= total;
  return raw;
}

inline Q random_rational(std::mt19937_64& rng, long lo, long hi, long den) {
  std::uniform_int_distribution<long> num(lo * den, hi * den);
  return qi(num(rng), den);
}

}  // namespace gtp::testing
