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

// Brute-force reference solvers. These deliberately share no algorithmic
// code with the modules they certify: enumeration is a plain odometer,
// residuals are explicit loops, and rank uses rational Gaussian elimination.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cils/assembler.hpp"

namespace cils {

struct OracleBudget {
  std::uint64_t max_enumeration = 10'000'000;
};

namespace oracle_detail {

// base^exp, saturating at UINT64_MAX.
inline std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= base;
  }
  return out;
}

// Advances `idx` as a mixed-radix counter; false once it wraps around.
inline bool next_index(std::vector<std::size_t>& idx, const std::vector<std::size_t>& radix) {
  for (std::size_t pos = idx.size(); pos-- > 0;) {
    if (++idx[pos] < radix[pos]) return true;
    idx[pos] = 0;
  }
  return false;
}

inline std::size_t rational_rank(const std::vector<IntVector>& rows) {
  using Q = boost::multiprecision::cpp_rational;
  if (rows.empty()) return 0;
  std::vector<std::vector<Q>> m;
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  const std::size_t nr = m.size(), nc = m.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < nc && rank < nr; ++c) {
    std::size_t p = rank;
    while (p < nr && m[p][c] == 0) ++p;
    if (p == nr) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < nr; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const Q f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < nc; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline double column_residual(const RealMatrix& y, const RealMatrix& g, std::size_t col,
                              const std::vector<const IntVector*>& rows) {
  double total = 0.0;
  for (Eigen::Index m = 0; m < g.rows(); ++m) {
    double r = y(m, static_cast<Eigen::Index>(col));
    for (std::size_t n = 0; n < rows.size(); ++n) {
      r -= g(m, static_cast<Eigen::Index>(n)) * static_cast<double>((*rows[n])[col]);
    }
    total += r * r;
  }
  return total;
}

}  // namespace oracle_detail

// Exhaustive filter of S^L by A x = 0 and ||x||_0 <= K, in lexicographic order.
inline std::vector<IntVector> oracle_F(const IntMatrix& a, const Alphabet& s, std::size_t k,
                                       const OracleBudget& budget = {}) {
  const std::size_t len = a.cols();
  if (oracle_detail::saturating_pow(s.size(), len) > budget.max_enumeration) {
    throw BudgetExceeded("oracle_F: |S|^L exceeds the enumeration budget");
  }
  std::vector<IntVector> out;
  std::vector<std::size_t> idx(len, 0);
  const std::vector<std::size_t> radix(len, s.size());
  IntVector x(len);
  do {
    std::size_t nnz = 0;
    for (std::size_t c = 0; c < len; ++c) {
      x[c] = s[idx[c]];
      nnz += x[c] != 0;
    }
    if (nnz > k) continue;
    bool zero = true;
    for (std::size_t r = 0; r < a.rows() && zero; ++r) {
      __int128 acc = 0;
      for (std::size_t c = 0; c < len; ++c) acc += static_cast<__int128>(a(r, c)) * x[c];
      zero = acc == 0;
    }
    if (zero) out.push_back(x);
  } while (oracle_detail::next_index(idx, radix));
  return out;
}

// Every x in S_1 x ... x S_N with ||y - G x||^2 <= d^2 (relative slack
// kRadiusSlack), ascending by distance then lexicographically.
inline std::vector<SphereCandidate> oracle_sphere(const RealVector& y, const RealMatrix& g,
                                                  double radius, const CandidateSets& sets,
                                                  const OracleBudget& budget = {}) {
  if (sets.size() != static_cast<std::size_t>(g.cols()) || y.size() != g.rows()) {
    throw DimensionError("oracle_sphere: inconsistent dimensions");
  }
  std::uint64_t count = 1;
  std::vector<std::size_t> radix;
  for (const auto& s : sets) {
    radix.push_back(s.size());
    count = count > std::numeric_limits<std::uint64_t>::max() / s.size()
                ? std::numeric_limits<std::uint64_t>::max()
                : count * s.size();
  }
  if (count > budget.max_enumeration) {
    throw BudgetExceeded("oracle_sphere: set product exceeds the enumeration budget");
  }
  const double limit = radius * radius * (1.0 + kRadiusSlack);
  std::vector<SphereCandidate> out;
  std::vector<std::size_t> idx(sets.size(), 0);
  IntVector x(sets.size());
  do {
    for (std::size_t i = 0; i < sets.size(); ++i) x[i] = sets[i][idx[i]];
    double total = 0.0;
    for (Eigen::Index m = 0; m < g.rows(); ++m) {
      double r = y(m);
      for (Eigen::Index n = 0; n < g.cols(); ++n) r -= g(m, n) * static_cast<double>(x[n]);
      total += r * r;
    }
    if (total <= limit) out.push_back({x, total});
  } while (oracle_detail::next_index(idx, radix));
  std::sort(out.begin(), out.end(), [](const SphereCandidate& a, const SphereCandidate& b) {
    return a.dist2 != b.dist2 ? a.dist2 < b.dist2 : a.x < b.x;
  });
  return out;
}

// Tries every ordered N-tuple of F and keeps the rank-N minimizer of
// ||Y - G X||^2; ties go to the lexicographically smallest vec(X).
inline SolveResult oracle_solve(const ProblemInstance& inst, const OracleBudget& budget = {}) {
  inst.validate();
  const auto family = oracle_F(inst.a, inst.s, inst.k, budget);
  const std::size_t n = inst.rank, cols = inst.num_cols();
  if (oracle_detail::saturating_pow(family.size(), n) > budget.max_enumeration) {
    throw BudgetExceeded("oracle_solve: |F|^N exceeds the enumeration budget");
  }
  if (family.empty()) throw InfeasibleError("F is empty", 0);

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_idx;
  std::vector<std::size_t> idx(n, 0);
  const std::vector<std::size_t> radix(n, family.size());
  std::vector<const IntVector*> rows(n);
  do {
    for (std::size_t i = 0; i < n; ++i) rows[i] = &family[idx[i]];
    double total = 0.0;
    for (std::size_t c = 0; c < cols && total < best; ++c) {
      total += oracle_detail::column_residual(inst.y, inst.g, c, rows);
    }
    if (!(total < best)) continue;
    std::vector<IntVector> stacked;
    for (const auto* r : rows) stacked.push_back(*r);
    if (oracle_detail::rational_rank(stacked) != n) continue;
    best = total;
    best_idx = idx;
  } while (oracle_detail::next_index(idx, radix));

  if (best_idx.empty()) {
    throw InfeasibleError("no rank-" + std::to_string(n) + " selection exists in F",
                          oracle_detail::rational_rank(family));
  }
  SolveResult result;
  result.x = IntMatrix(n, cols);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < cols; ++c) result.x(i, c) = family[best_idx[i]][c];
  result.objective = best;
  return result;
}

}  // namespace cils
