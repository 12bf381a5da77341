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

#include <cstddef>
#include <optional>
#include <vector>

#include "gtp/errors.hpp"
#include "gtp/rational.hpp"

namespace gtp::lp {

enum class Status { optimal, infeasible, unbounded };

/// Result of  minimize c.x  subject to  A x = b, x >= 0.
///
/// When optimal, `dual` is an optimal solution of  maximize b.y  subject to
/// A^T y <= c. When infeasible, `dual` is a Farkas certificate: A^T y <= 0
/// and b.y > 0.
struct Solution {
  Status status = Status::optimal;
  Rational objective;
  Vec primal;
  Vec dual;
};

/// Dense two-phase simplex in exact arithmetic with Bland's rule, for the
/// small per-node programs of the oracle.
class Simplex {
 public:
  Simplex(std::vector<Vec> a, Vec b, Vec c)
      : rows_(a.size()), cols_(c.size()), cost_(std::move(c)) {
    if (b.size() != rows_) throw InvalidInput("lp: rhs size mismatch");
    flipped_.assign(rows_, false);
    tab_.assign(rows_, Vec(cols_ + rows_, Rational(0)));
    rhs_ = std::move(b);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (a[i].size() != cols_) throw InvalidInput("lp: row size mismatch");
      flipped_[i] = sgn(rhs_[i]) < 0;
      for (std::size_t j = 0; j < cols_; ++j) tab_[i][j] = flipped_[i] ? -a[i][j] : a[i][j];
      if (flipped_[i]) rhs_[i] = -rhs_[i];
      tab_[i][cols_ + i] = 1;
    }
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) basis_[i] = cols_ + i;
  }

  Solution solve() {
    Solution out;
    // phase 1: minimize the sum of artificials
    Vec phase1(cols_ + rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) phase1[cols_ + i] = 1;
    iterate(phase1, cols_ + rows_);
    if (sgn(objective(phase1)) > 0) {
      out.status = Status::infeasible;
      out.objective = objective(phase1);
      out.dual = duals(phase1);
      return out;
    }
    drive_out_artificials();

    Vec phase2(cols_ + rows_, Rational(0));
    for (std::size_t j = 0; j < cols_; ++j) phase2[j] = cost_[j];
    if (!iterate(phase2, cols_)) {
      out.status = Status::unbounded;
      return out;
    }
    out.objective = objective(phase2);
    out.primal.assign(cols_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
      if (basis_[i] < cols_) out.primal[basis_[i]] = rhs_[i];
    out.dual = duals(phase2);
    return out;
  }

 private:
  Rational objective(const Vec& cost) const {
    Rational z = 0;
    for (std::size_t i = 0; i < rows_; ++i) z += cost[basis_[i]] * rhs_[i];
    return z;
  }

  // y = c_B B^{-1}; B^{-1} sits in the artificial columns, up to row flips.
  Vec duals(const Vec& cost) const {
    Vec y(rows_, Rational(0));
    for (std::size_t k = 0; k < rows_; ++k) {
      Rational v = 0;
      for (std::size_t i = 0; i < rows_; ++i) v += cost[basis_[i]] * tab_[i][cols_ + k];
      y[k] = flipped_[k] ? -v : v;
    }
    return y;
  }

  Rational reduced_cost(const Vec& cost, std::size_t j) const {
    Rational r = cost[j];
    for (std::size_t i = 0; i < rows_; ++i) r -= cost[basis_[i]] * tab_[i][j];
    return r;
  }

  void pivot(std::size_t row, std::size_t col) {
    Rational piv = tab_[row][col];
    for (auto& x : tab_[row]) x /= piv;
    rhs_[row] /= piv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row || sgn(tab_[i][col]) == 0) continue;
      Rational f = tab_[i][col];
      for (std::size_t j = 0; j < tab_[i].size(); ++j) tab_[i][j] -= f * tab_[row][j];
      rhs_[i] -= f * rhs_[row];
    }
    basis_[row] = col;
  }

  // Columns [0, enterable) may enter. Returns false when unbounded.
  bool iterate(const Vec& cost, std::size_t enterable) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < enterable; ++j) {
        if (sgn(reduced_cost(cost, j)) < 0) {
          enter = j;
          break;
        }
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (sgn(tab_[i][*enter]) <= 0) continue;
        Rational ratio = rhs_[i] / tab_[i][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  // Artificials left basic at level zero are pivoted onto a real column;
  // rows with no real entry are redundant and keep their artificial at 0.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < cols_) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (sgn(tab_[i][j]) != 0) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  std::size_t rows_, cols_;
  Vec cost_;
  std::vector<Vec> tab_;
  Vec rhs_;
  std::vector<bool> flipped_;
  std::vector<std::size_t> basis_;
};

inline Solution minimize(std::vector<Vec> a, Vec b, Vec c) {
  return Simplex(std::move(a), std::move(b), std::move(c)).solve();
}

}  // namespace gtp::lp
