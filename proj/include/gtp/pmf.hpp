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

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gtp/errors.hpp"
#include "gtp/rational.hpp"

namespace gtp {

/// Finite-support probability mass function with exact weights.
///
/// Zero weights may be stored explicitly (closed forms written over a full
/// range keep them); `same_law` compares two pmfs while ignoring them.
template <typename Point>
class Pmf {
 public:
  using point_type = Point;
  using map_type = std::map<Point, Rational>;

  Pmf() = default;

  /// Validates nonnegativity and exact normalization.
  explicit Pmf(map_type weights) : weights_(std::move(weights)) {
    Rational total = 0;
    for (const auto& [point, w] : weights_) {
      if (sgn(w) < 0)
        throw InvalidInput("pmf weight is negative: " + to_string(w));
      total += w;
    }
    if (total != 1)
      throw InvalidInput("pmf weights sum to " + to_string(total) + ", not 1");
  }

  const map_type& weights() const noexcept { return weights_; }
  auto begin() const { return weights_.begin(); }
  auto end() const { return weights_.end(); }
  std::size_t size() const noexcept { return weights_.size(); }

  Rational weight(const Point& p) const {
    auto it = weights_.find(p);
    return it == weights_.end() ? Rational(0) : it->second;
  }

  /// Same law with zero-weight points removed.
  Pmf positive_part() const {
    Pmf out;
    for (const auto& [point, w] : weights_)
      if (sgn(w) != 0) out.weights_.emplace(point, w);
    return out;
  }

  /// Pushforward through `f`.
  template <typename F>
  auto map(F&& f) const {
    using Q = std::decay_t<decltype(f(std::declval<const Point&>()))>;
    std::map<Q, Rational> out;
    for (const auto& [point, w] : weights_) out[f(point)] += w;
    return Pmf<Q>(std::move(out));
  }

  bool operator==(const Pmf& other) const { return weights_ == other.weights_; }

 private:
  map_type weights_;
};

template <typename Point>
bool same_law(const Pmf<Point>& a, const Pmf<Point>& b) {
  return a.positive_part() == b.positive_part();
}

using ScalarPmf = Pmf<long>;
using VectorPmf = Pmf<std::vector<long>>;

inline std::string render_point(long p) { return std::to_string(p); }
inline std::string render_point(const Rational& p) { return to_string(p); }
inline std::string render_point(const std::vector<long>& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(p[i]);
  }
  return out + ")";
}

}  // namespace gtp
