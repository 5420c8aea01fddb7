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

// Shared test data: the worked 3x7 example (Y = G X_a exactly) and small
// test-only helpers that do not depend on the library's algorithms.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cils/cils.hpp"

namespace cils::testing {

inline IntMatrix example_a() {
  return {{8, 2, 10, 0, 12, 2, 0}, {4, 6, 9, 1, 14, 5, 2}, {2, 0, 1, 1, 0, 1, 0}, {2, 1, 3, 0, 4, 0, 1}};
}

inline IntMatrix example_x() {
  return {{1, 1, -1, -1, 0, 0, 0}, {0, -1, -1, 1, 1, 0, 0}, {0, 1, 0, 1, 0, -1, -1}};
}

// Reference factorization H = U A (its last pivot is negative) for example_a().
inline IntMatrix example_h() {
  return {{2, 0, 0, 2, -2, -8, 10}, {0, 1, 0, 1, 0, -19, 21}, {0, 0, 1, -1, 2, 9, -10}, {0, 0, 0, 0, 0, -18, 18}};
}

inline IntMatrix example_u() {
  return {{-3, -1, 3, 12}, {-6, -2, 3, 25}, {3, 1, -2, -12}, {-5, -2, 2, 22}};
}

inline RealMatrix example_g() {
  RealMatrix g(4, 3);
  g << 0.5, 0.3, 3.5,
       1.8, -1.3, 2.7,
       -2.2, -0.4, -1.3,
       0.8, 0.3, 3.0;
  return g;
}

inline RealMatrix example_y() {
  RealMatrix y(4, 7);
  y << 0.5, 3.7, -0.8, 3.3, 0.3, -3.5, -3.5,
       1.8, 5.8, -0.5, -0.4, -1.3, -2.7, -2.7,
       -2.2, -3.1, 2.6, 0.5, -0.4, 1.3, 1.3,
       0.8, 3.5, -1.1, 2.5, 0.3, -3.0, -3.0;
  return y;
}

inline ProblemInstance example_instance(std::optional<double> d0 = 0.5) {
  ProblemInstance inst;
  inst.y = example_y();
  inst.g = example_g();
  inst.a = example_a();
  inst.s = Alphabet{-1, 0, 1};
  inst.k = 4;
  inst.rank = 3;
  inst.d0 = d0;
  return inst;
}

inline IntMatrix random_int_matrix(Rng& rng, std::size_t rows, std::size_t cols, std::int64_t lo,
                                   std::int64_t hi) {
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.uniform_int(lo, hi);
  return m;
}

inline RealMatrix random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  RealMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rng.normal();
  return m;
}

// Every vector of S^len in lexicographic order (odometer).
inline std::vector<IntVector> all_vectors(const Alphabet& s, std::size_t len) {
  std::vector<IntVector> out;
  std::vector<std::size_t> idx(len, 0);
  while (true) {
    IntVector v(len);
    for (std::size_t i = 0; i < len; ++i) v[i] = s[idx[i]];
    out.push_back(v);
    std::size_t pos = len;
    while (pos > 0 && ++idx[pos - 1] == s.size()) idx[--pos] = 0;
    if (pos == 0) break;
  }
  return out;
}

inline bool is_zero_product(const IntMatrix& a, const IntVector& x) {
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::int64_t acc = 0;
    for (std::size_t c = 0; c < a.cols(); ++c) acc += a(r, c) * x[c];
    if (acc != 0) return false;
  }
  return true;
}

// Brute-force F: filter S^L by A x = 0 and the L0 bound.
inline std::vector<IntVector> brute_force_f(const IntMatrix& a, const Alphabet& s, std::size_t k) {
  std::vector<IntVector> out;
  for (auto& v : all_vectors(s, a.cols()))
    if (l0_norm(v) <= k && is_zero_product(a, v)) out.push_back(v);
  return out;
}

// Rank over Q by Gaussian elimination on rationals.
inline std::size_t rational_rank_of(const IntMatrix& m) {
  using Q = boost::multiprecision::cpp_rational;
  std::vector<std::vector<Q>> w(m.rows(), std::vector<Q>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) w[r][c] = m(r, c);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && w[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(w[p], w[rank]);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      const Q f = w[r][c] / w[rank][c];
      for (std::size_t k = c; k < m.cols(); ++k) w[r][k] -= f * w[rank][k];
    }
    ++rank;
  }
  return rank;
}

// True iff v is an integer combination of the (linearly independent) rows of
// basis. Solved over Q, then checked for integrality.
inline bool in_integer_lattice(const std::vector<BigInt>& v, const std::vector<std::vector<BigInt>>& basis) {
  using Q = boost::multiprecision::cpp_rational;
  const std::size_t n = basis.size(), len = v.size();
  // Augmented system basis^T c = v, as len rows of n+1 entries.
  std::vector<std::vector<Q>> w(len, std::vector<Q>(n + 1));
  for (std::size_t c = 0; c < len; ++c) {
    for (std::size_t i = 0; i < n; ++i) w[c][i] = Q(basis[i][c]);
    w[c][n] = Q(v[c]);
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivot_of(n, len);
  for (std::size_t col = 0; col < n && row < len; ++col) {
    std::size_t p = row;
    while (p < len && w[p][col] == 0) ++p;
    if (p == len) return false;  // dependent basis
    std::swap(w[p], w[row]);
    for (std::size_t r = 0; r < len; ++r) {
      if (r == row || w[r][col] == 0) continue;
      const Q f = w[r][col] / w[row][col];
      for (std::size_t k = col; k <= n; ++k) w[r][k] -= f * w[row][k];
    }
    pivot_of[col] = row++;
  }
  for (std::size_t r = row; r < len; ++r)
    if (w[r][n] != 0) return false;  // not even in the rational span
  for (std::size_t i = 0; i < n; ++i) {
    const Q coef = w[pivot_of[i]][n] / w[pivot_of[i]][i];
    if (boost::multiprecision::denominator(coef) != 1) return false;
  }
  return true;
}

}  // namespace cils::testing
