// Copyright 2026 The cils Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact integer linear algebra: Hermite normal form with a unimodular left
// transform, determinant, and rank. All elimination runs on arbitrary
// precision integers, so intermediate growth never wraps.

#pragma once

#include <cstddef>
#include <optional>
#include <tuple>
#include <utility>

#include "cils/matrix.hpp"

namespace cils {

struct HnfResult {
  BigMatrix h;  // row echelon, H = U * A
  BigMatrix u;  // square, |det U| = 1
};

namespace detail {

// Returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
inline std::tuple<BigInt, BigInt, BigInt> extended_gcd(const BigInt& a, const BigInt& b) {
  BigInt old_r = a, r = b;
  BigInt old_s = 1, s = 0;
  BigInt old_t = 0, t = 1;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = std::move(r);
    r = std::move(tmp);
    tmp = old_s - q * s;
    old_s = std::move(s);
    s = std::move(tmp);
    tmp = old_t - q * t;
    old_t = std::move(t);
    t = std::move(tmp);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Replace rows (i, k) of m by (s*ri + t*rk, p*ri + q*rk).
inline void combine_rows(BigMatrix& m, std::size_t i, std::size_t k, const BigInt& s,
                         const BigInt& t, const BigInt& p, const BigInt& q) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    BigInt ri = m(i, c);
    BigInt rk = m(k, c);
    m(i, c) = s * ri + t * rk;
    m(k, c) = p * ri + q * rk;
  }
}

inline void axpy_row(BigMatrix& m, std::size_t dst, std::size_t src, const BigInt& factor) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) -= factor * m(src, c);
}

inline void negate_row(BigMatrix& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
}

// Fraction-free (Bareiss) forward elimination with row pivoting, in place.
// Returns the rank and the sign flips caused by row swaps.
inline std::pair<std::size_t, int> bareiss_eliminate(BigMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t rank = 0;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(piv, j), m(rank, j));
      sign = -sign;
    }
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m(r, j) = (m(rank, c) * m(r, j) - m(r, c) * m(rank, j)) / prev;
      }
      m(r, c) = 0;
    }
    prev = m(rank, c);
    ++rank;
  }
  return {rank, sign};
}

}  // namespace detail

// Row-style Hermite normal form: H = U*A with U unimodular, pivots positive
// and strictly moving right, entries above each pivot reduced into
// [0, pivot). Zero rows of H are kept at the bottom.
template <typename T>
HnfResult hermite_normal_form(const Matrix<T>& a) {
  if (a.empty()) throw DimensionError("hermite_normal_form: empty matrix");
  BigMatrix h = to_big(a);
  BigMatrix u = BigMatrix::identity(a.rows());
  const std::size_t rows = h.rows(), cols = h.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    for (std::size_t k = r + 1; k < rows; ++k) {
      if (h(k, c) == 0) continue;
      const BigInt x = h(r, c), y = h(k, c);
      auto [g, s, t] = detail::extended_gcd(x, y);
      const BigInt p = -y / g, q = x / g;
      detail::combine_rows(h, r, k, s, t, p, q);
      detail::combine_rows(u, r, k, s, t, p, q);
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      detail::negate_row(h, r);
      detail::negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      const BigInt f = detail::floor_div(h(i, c), h(r, c));
      if (f == 0) continue;
      detail::axpy_row(h, i, r, f);
      detail::axpy_row(u, i, r, f);
    }
    ++r;
  }
  return {std::move(h), std::move(u)};
}

template <typename T>
BigInt determinant(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant: matrix is not square");
  BigMatrix w = to_big(m);
  auto [rank, sign] = detail::bareiss_eliminate(w);
  if (rank < w.rows()) return 0;
  BigInt det = w(w.rows() - 1, w.cols() - 1);
  return sign < 0 ? BigInt(-det) : det;
}

// Exact rank over the rationals via fraction-free elimination.
template <typename T>
std::size_t int_rank(const Matrix<T>& m) {
  if (m.empty()) throw DimensionError("int_rank: empty matrix");
  BigMatrix w = to_big(m);
  return detail::bareiss_eliminate(w).first;
}

// Column index of the first nonzero entry of row r, or nullopt for a zero row.
template <typename T>
std::optional<std::size_t> pivot_column(const Matrix<T>& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (m(r, c) != 0) return c;
  return std::nullopt;
}

template <typename T>
bool is_row_echelon(const Matrix<T>& m) {
  std::optional<std::size_t> last;
  bool seen_zero_row = false;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto p = pivot_column(m, r);
    if (!p) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (last && *p <= *last) return false;
    last = p;
  }
  return true;
}

// True iff H = U*A, |det U| = 1 and H is in row echelon form.
template <typename TH, typename TU, typename TA>
bool validate_hnf(const Matrix<TH>& h, const Matrix<TU>& u, const Matrix<TA>& a) {
  if (u.rows() != u.cols() || u.cols() != a.rows() || h.rows() != a.rows() ||
      h.cols() != a.cols()) {
    throw DimensionError("validate_hnf: incompatible dimensions");
  }
  const BigMatrix hb = to_big(h);
  if (multiply(to_big(u), to_big(a)) != hb) return false;
  const BigInt det = determinant(u);
  if (det != 1 && det != -1) return false;
  return is_row_echelon(hb);
}

}  // namespace cils
