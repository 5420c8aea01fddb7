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

// Fincke-Pohst enumeration with a separate finite alphabet per coordinate.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cils/alphabet.hpp"
#include "cils/errors.hpp"
#include "cils/matrix.hpp"

namespace cils {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using CandidateSets = std::vector<Alphabet>;

// Relative slack applied to d^2 when deciding whether a point is inside.
inline constexpr double kRadiusSlack = 1e-9;

struct SphereCandidate {
  IntVector x;
  double dist2 = 0.0;  // ||y - G x||^2
};

// Ascending dist2, ties broken lexicographically on x.
inline bool candidate_less(const SphereCandidate& a, const SphereCandidate& b) {
  if (a.dist2 != b.dist2) return a.dist2 < b.dist2;
  return a.x < b.x;
}

struct QrFactors {
  RealMatrix q1;  // M x N, orthonormal columns
  RealMatrix q2;  // M x (M - N)
  RealMatrix r;   // N x N upper triangular, positive diagonal
};

inline void require_finite(const RealMatrix& m, const char* what) {
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + " has non-finite entries");
}

// G = [Q1 Q2] [R; 0] with diag(R) > 0.
inline QrFactors qr_positive(const RealMatrix& g) {
  require_finite(g, "G");
  const Eigen::Index m = g.rows(), n = g.cols();
  if (n == 0 || m < n) throw DecompositionError("G must have at least as many rows as columns");
  Eigen::HouseholderQR<RealMatrix> qr(g);
  const RealMatrix q = qr.householderQ() * RealMatrix::Identity(m, m);
  QrFactors f{q.leftCols(n), q.rightCols(m - n),
              qr.matrixQR().topRows(n).triangularView<Eigen::Upper>()};
  const double tol = 1e-10 * std::max(1.0, g.norm());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(f.r(i, i)) <= tol) throw DecompositionError("G is rank deficient");
    if (f.r(i, i) < 0) {
      f.r.row(i) *= -1.0;
      f.q1.col(i) *= -1.0;
    }
  }
  return f;
}

// Squared residual ||y - G x||^2 evaluated row by row.
inline double residual_norm2(const RealVector& y, const RealMatrix& g,
                             std::span<const std::int64_t> x) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    double r = y(i);
    for (Eigen::Index j = 0; j < g.cols(); ++j) r -= g(i, j) * static_cast<double>(x[j]);
    total += r * r;
  }
  return total;
}

// Holds the QR factorization of G so repeated queries against the same
// lattice skip refactoring.
class SphereDecoder {
 public:
  explicit SphereDecoder(const RealMatrix& g) : g_(g), qr_(qr_positive(g)) {}

  const RealMatrix& g() const noexcept { return g_; }
  const QrFactors& factors() const noexcept { return qr_; }

  // All x in S_1 x ... x S_N with ||y - G x||^2 <= d^2, ascending by
  // distance (ties lexicographic).
  std::vector<SphereCandidate> decode(const RealVector& y, double radius,
                                      const CandidateSets& sets) const {
    check_query(y, sets);
    if (!(radius > 0.0) || !std::isfinite(radius)) {
      throw std::invalid_argument("sphere radius must be positive and finite");
    }
    const Eigen::Index n = g_.cols();
    Query q{y, sets, qr_.q1.transpose() * y, radius * radius * (1.0 + kRadiusSlack), {}, {}};
    q.x.assign(static_cast<std::size_t>(n), 0);
    // Part of the residual orthogonal to range(G); no x can reduce it.
    const double base = (y - qr_.q1 * q.z).squaredNorm();
    const double pad = 1e-9 * (q.limit + y.squaredNorm()) + 1e-300;
    enumerate(q, n - 1, q.limit - base + pad);
    std::sort(q.out.begin(), q.out.end(), candidate_less);
    return q.out;
  }

  // Distance to the coordinate-wise rounding of the unconstrained least
  // squares solution onto each S_i, plus a small margin.
  double babai_radius(const RealVector& y, const CandidateSets& sets) const {
    check_query(y, sets);
    const Eigen::Index n = g_.cols();
    const RealVector z = qr_.q1.transpose() * y;
    const RealVector xls = qr_.r.triangularView<Eigen::Upper>().solve(z);
    IntVector x(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) x[i] = nearest_member(sets[i], xls(i));
    const double r = std::sqrt(residual_norm2(y, g_, x));
    return r + 1e-9 * (1.0 + r);
  }

 private:
  struct Query {
    const RealVector& y;
    const CandidateSets& sets;
    RealVector z;
    double limit;  // inclusion threshold on ||y - Gx||^2
    IntVector x;
    std::vector<SphereCandidate> out;
  };

  void check_query(const RealVector& y, const CandidateSets& sets) const {
    if (y.size() != g_.rows()) throw DimensionError("y length differs from rows of G");
    if (sets.size() != static_cast<std::size_t>(g_.cols())) {
      throw DimensionError("one candidate set per column of G is required");
    }
    if (!y.allFinite()) throw std::invalid_argument("y has non-finite entries");
  }

  static std::int64_t nearest_member(const Alphabet& s, double v) {
    auto vals = s.values();
    auto it = std::lower_bound(vals.begin(), vals.end(), v,
                               [](std::int64_t a, double b) { return static_cast<double>(a) < b; });
    if (it == vals.end()) return vals.back();
    if (it == vals.begin()) return *it;
    const auto below = *(it - 1);
    return (v - static_cast<double>(below) <= static_cast<double>(*it) - v) ? below : *it;
  }

  // Depth-first over coordinates n-1 .. 0. `budget` is what is left of d^2
  // after the coordinates above `level` are fixed.
  void enumerate(Query& q, Eigen::Index level, double budget) const {
    if (budget < 0.0) return;
    if (level < 0) {
      const double d2 = residual_norm2(q.y, g_, q.x);
      if (d2 <= q.limit) q.out.push_back({q.x, d2});
      return;
    }
    const auto& r = qr_.r;
    double centre = q.z(level);
    for (Eigen::Index j = level + 1; j < g_.cols(); ++j) {
      centre -= r(level, j) * static_cast<double>(q.x[j]);
    }
    const double rii = r(level, level);
    const double half_width = std::sqrt(budget) / rii;
    const double mid = centre / rii;
    for (std::int64_t v : q.sets[level].between(mid - half_width, mid + half_width)) {
      const double e = rii * static_cast<double>(v) - centre;
      const double rest = budget - e * e;
      if (rest < 0.0) continue;
      q.x[level] = v;
      enumerate(q, level - 1, rest);
    }
    q.x[level] = 0;
  }

  RealMatrix g_;
  QrFactors qr_;
};

inline std::vector<SphereCandidate> sphere_decode(const RealVector& y, const RealMatrix& g,
                                                  double radius, const CandidateSets& sets) {
  return SphereDecoder(g).decode(y, radius, sets);
}

inline double babai_radius(const RealVector& y, const RealMatrix& g, const CandidateSets& sets) {
  return SphereDecoder(g).babai_radius(y, sets);
}

}  // namespace cils
