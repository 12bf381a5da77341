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

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gtp {

/// Exact rational number; every price, stake and capital value in the
/// library is one of these.
using Rational = mpq_class;
using Vec = std::vector<Rational>;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p/q", an integer, or a decimal such as "-1.25" or "3e-2".
/// Decimals are converted exactly.
inline Rational parse_rational(std::string_view text) {
  auto bad = [&] {
    return std::invalid_argument("not a rational: '" + std::string(text) + "'");
  };
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw bad();

  if (auto slash = s.find('/'); slash != std::string::npos) {
    auto valid_int = [](const std::string& part) {
      std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+'));
      if (i >= part.size()) return false;
      return std::all_of(part.begin() + static_cast<long>(i), part.end(),
                         [](unsigned char c) { return std::isdigit(c); });
    };
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw bad();
    if (num[0] == '+') num.erase(0, 1);
    if (den[0] == '+') den.erase(0, 1);
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
  }

  // decimal / scientific
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_digit = false, seen_point = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw bad();
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw bad();
    std::string exp = s.substr(i + 1);
    std::size_t used = 0;
    try {
      exponent = std::stol(exp, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != exp.size()) throw bad();
  }
  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  long shift = exponent - scale;
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational q = shift >= 0 ? Rational(mantissa * power) : Rational(mantissa, power);
  q.canonicalize();
  return q;
}

/// Canonical "p/q" form ("p" for integers).
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Decimal rendering rounded half away from zero; only used at output.
inline std::string to_decimal(const Rational& q, int precision) {
  if (precision < 0) precision = 0;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(precision));
  mpz_class num = abs(q.get_num()) * scale * 2 + q.get_den();
  mpz_class den = q.get_den() * 2;
  mpz_class rounded;
  mpz_fdiv_q(rounded.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  std::string digits = rounded.get_str();
  if (static_cast<int>(digits.size()) <= precision)
    digits.insert(0, static_cast<std::size_t>(precision + 1) - digits.size(), '0');
  std::string out = (sgn(q) < 0 && rounded != 0) ? "-" : "";
  out += digits.substr(0, digits.size() - static_cast<std::size_t>(precision));
  if (precision > 0)
    out += "." + digits.substr(digits.size() - static_cast<std::size_t>(precision));
  return out;
}

inline std::string join(std::span<const Rational> values,
                        std::string_view sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += to_string(values[i]);
  }
  return out;
}

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1, b = base;
  while (exponent) {
    if (exponent & 1u) result *= b;
    b *= b;
    exponent >>= 1u;
  }
  return result;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec negate(Vec v) {
  for (auto& x : v) x = -x;
  return v;
}

inline Rational sum(std::span<const Rational> v) {
  Rational s = 0;
  for (const auto& x : v) s += x;
  return s;
}

}  // namespace gtp
