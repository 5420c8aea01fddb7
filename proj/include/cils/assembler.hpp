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

// Matrix solver for
//
//   min ||Y - G X||^2  s.t.  X in S^{N x L},  A X^T = 0,
//                            ||X(i,:)||_0 <= K,  rank(X) = N.
//
// Every row of X must come from the Diophantine set F. One copy of F is kept
// per row; columns are decoded left to right with the sphere decoder, using
// the values still present in each row's copy as that coordinate's alphabet.
// A decoded column prunes each copy to the vectors agreeing with it. The
// search is a depth-first walk over the ascending candidate lists of every
// column; the radius grows by one whenever a full walk finds no rank-N X.

#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cils/alphabet.hpp"
#include "cils/dioph.hpp"
#include "cils/intlin.hpp"
#include "cils/matrix.hpp"
#include "cils/spheredec.hpp"

namespace cils {

struct ProblemInstance {
  RealMatrix y;  // M x L
  RealMatrix g;  // M x N
  IntMatrix a;   // P x L
  Alphabet s{0};
  std::size_t k = 0;
  std::size_t rank = 0;  // N
  std::optional<double> d0;

  std::size_t num_rows() const { return rank; }
  std::size_t num_cols() const { return static_cast<std::size_t>(y.cols()); }

  // Throws DimensionError describing the first inconsistency.
  void validate() const {
    if (y.size() == 0 || g.size() == 0 || a.empty()) throw DimensionError("Y, G and A must be nonempty");
    if (y.rows() != g.rows()) throw DimensionError("Y and G must have the same number of rows");
    if (a.cols() != static_cast<std::size_t>(y.cols())) {
      throw DimensionError("A must have as many columns as Y");
    }
    if (rank == 0 || static_cast<std::size_t>(g.cols()) != rank) {
      throw DimensionError("G must have N columns (N = target rank >= 1)");
    }
    if (rank > num_cols()) throw DimensionError("target rank N exceeds the number of columns L");
    if (k > num_cols()) throw DimensionError("sparsity K exceeds the number of columns L");
    if (d0 && !(*d0 > 0.0 && std::isfinite(*d0))) throw DimensionError("d0 must be positive");
    require_finite(y, "Y");
    require_finite(g, "G");
  }
};

struct SolveStats {
  std::size_t dioph_nodes = 0;  // N_F
  std::size_t sphere_calls = 0;
  std::size_t radius_expansions = 0;
  std::size_t backtracks = 0;
  double wall_time = 0.0;  // seconds
};

// One decoded column on the path that produced the returned X.
struct ColumnStep {
  CandidateSets sets;
  IntVector x_c;
  double dist2 = 0.0;
};

struct SolveResult {
  IntMatrix x;
  double objective = 0.0;
  SolveStats stats;
  double radius = 0.0;  // radius of the sweep that produced X
  std::vector<ColumnStep> trace;
};

inline RealMatrix to_real(const IntMatrix& x) {
  RealMatrix out(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) out(r, c) = static_cast<double>(x(r, c));
  return out;
}

// ||Y - G X||_F^2.
inline double objective(const RealMatrix& y, const RealMatrix& g, const IntMatrix& x) {
  if (static_cast<std::size_t>(g.cols()) != x.rows() || static_cast<std::size_t>(y.cols()) != x.cols() ||
      y.rows() != g.rows()) {
    throw DimensionError("objective: inconsistent dimensions");
  }
  return (y - g * to_real(x)).squaredNorm();
}

// Empty optional when X satisfies every constraint, otherwise a description.
inline std::optional<std::string> feasibility_violation(const ProblemInstance& inst,
                                                        const IntMatrix& x) {
  if (x.rows() != inst.rank || x.cols() != inst.num_cols()) return "X has the wrong shape";
  for (std::size_t i = 0; i < x.rows(); ++i) {
    if (l0_norm(x.row(i)) > inst.k) return "row " + std::to_string(i) + " exceeds the L0 bound";
    for (std::int64_t v : x.row(i))
      if (!inst.s.contains(v)) return "row " + std::to_string(i) + " leaves the alphabet";
  }
  const BigMatrix ax = multiply(to_big(inst.a), to_big(x.transpose()));
  for (const auto& v : ax.data())
    if (v != 0) return std::string("A X^T is not zero");
  if (int_rank(x) != inst.rank) return std::string("rank(X) differs from N");
  return std::nullopt;
}

// Per-row copies of F. Rows share the family and hold index lists into it,
// so copying a bundle is cheap and leaves the original intact.
class RowTreeBundle {
 public:
  using Family = std::vector<IntVector>;

  RowTreeBundle(std::shared_ptr<const Family> family, std::size_t rows) : family_(std::move(family)) {
    std::vector<std::uint32_t> all(family_->size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<std::uint32_t>(i);
    members_.assign(rows, all);
  }

  std::size_t rows() const noexcept { return members_.size(); }
  const Family& family() const noexcept { return *family_; }
  std::span<const std::uint32_t> members(std::size_t row) const { return members_[row]; }
  std::size_t size(std::size_t row) const { return members_[row].size(); }
  bool all_singletons() const {
    for (const auto& m : members_)
      if (m.size() != 1) return false;
    return true;
  }

  std::vector<IntVector> surviving(std::size_t row) const {
    std::vector<IntVector> out;
    for (std::uint32_t idx : members_[row]) out.push_back((*family_)[idx]);
    return out;
  }

  // Keeps the vectors of `row` whose entry at `col` equals `value`.
  void retain(std::size_t row, std::size_t col, std::int64_t value) {
    std::erase_if(members_[row], [&](std::uint32_t idx) { return (*family_)[idx][col] != value; });
  }

  // Stacks the first surviving vector of every row.
  IntMatrix assemble() const {
    IntMatrix x(rows(), family_->front().size());
    for (std::size_t i = 0; i < rows(); ++i) {
      const IntVector& v = (*family_)[members_[i].front()];
      std::copy(v.begin(), v.end(), x.row(i).begin());
    }
    return x;
  }

 private:
  std::shared_ptr<const Family> family_;
  std::vector<std::vector<std::uint32_t>> members_;
};

// S_{i,j}: distinct values at column j over the vectors surviving in row i.
inline CandidateSets derive_column_sets(const RowTreeBundle& bundle, std::size_t j) {
  CandidateSets sets;
  sets.reserve(bundle.rows());
  for (std::size_t i = 0; i < bundle.rows(); ++i) {
    if (bundle.size(i) == 0) {
      throw InfeasibleError("row " + std::to_string(i) + " has no surviving candidates", 0);
    }
    std::set<std::int64_t> values;
    for (std::uint32_t idx : bundle.members(i)) values.insert(bundle.family()[idx][j]);
    sets.emplace_back(std::vector<std::int64_t>(values.begin(), values.end()));
  }
  return sets;
}

// Restricts each non-singleton row to vectors with x_c[i] at column j.
// Rows already down to one vector are left untouched.
inline RowTreeBundle prune_with_column(const RowTreeBundle& bundle, std::size_t j,
                                       std::span<const std::int64_t> x_c) {
  if (x_c.size() != bundle.rows()) throw DimensionError("column length differs from bundle rows");
  RowTreeBundle out = bundle;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    if (out.size(i) > 1) out.retain(i, j, x_c[i]);
  }
  return out;
}

// True when every row still has a vector agreeing with x_c at column j.
inline bool column_consistent(const RowTreeBundle& bundle, std::size_t j,
                              std::span<const std::int64_t> x_c) {
  for (std::size_t i = 0; i < bundle.rows(); ++i) {
    if (bundle.size(i) == 0) return false;
    if (bundle.size(i) == 1 && bundle.family()[bundle.members(i).front()][j] != x_c[i]) return false;
  }
  return true;
}

// Greedily picks `count` linearly independent vectors from `family`, in order.
// This is the whole construction when the constraint reads A X = 0 instead
// of A X^T = 0.
inline IntMatrix select_independent_rows(const std::vector<IntVector>& family, std::size_t count) {
  std::vector<IntVector> picked;
  for (const auto& v : family) {
    if (picked.size() == count) break;
    picked.push_back(v);
    if (int_rank(IntMatrix::from_rows(picked)) < picked.size()) picked.pop_back();
  }
  if (picked.size() < count) {
    throw InfeasibleError("feasible set spans rank " + std::to_string(picked.size()) + " < " +
                              std::to_string(count),
                          picked.size());
  }
  return IntMatrix::from_rows(picked);
}

namespace detail {

class ColumnSearch {
 public:
  ColumnSearch(const ProblemInstance& inst, const SphereDecoder& decoder, SolveStats& stats)
      : inst_(inst), decoder_(decoder), stats_(stats) {
    columns_.reserve(inst.num_cols());
    for (Eigen::Index j = 0; j < inst.y.cols(); ++j) columns_.push_back(inst.y.col(j));
  }

  // Exhaustive walk at `radius`, keeping X only if it beats `best_objective`.
  void run(const RowTreeBundle& root, double radius) {
    radius_ = radius;
    path_.clear();
    visit(0, root, 0.0, false);
  }

  bool found() const { return best_.has_value(); }
  double best_objective() const { return best_objective_; }
  const IntMatrix& best() const { return *best_; }
  const std::vector<ColumnStep>& best_trace() const { return best_trace_; }
  double best_radius() const { return best_radius_; }

 private:
  void visit(std::size_t j, const RowTreeBundle& bundle, double partial, bool rank_ok) {
    if (!rank_ok && bundle.all_singletons()) {
      // Nothing can change any more; a rank-deficient stack is a dead end.
      if (int_rank(bundle.assemble()) != inst_.rank) {
        ++stats_.backtracks;
        return;
      }
      rank_ok = true;
    }
    if (j == inst_.num_cols()) {
      IntMatrix x = bundle.assemble();
      if (!rank_ok && int_rank(x) != inst_.rank) {
        ++stats_.backtracks;
        return;
      }
      if (partial < best_objective_) {
        best_objective_ = partial;
        best_ = std::move(x);
        best_trace_ = path_;
        best_radius_ = radius_;
      }
      return;
    }
    CandidateSets sets = derive_column_sets(bundle, j);
    ++stats_.sphere_calls;
    const auto candidates = decoder_.decode(columns_[j], radius_, sets);
    for (const auto& cand : candidates) {
      if (partial + cand.dist2 >= best_objective_) break;
      if (!column_consistent(bundle, j, cand.x)) {
        ++stats_.backtracks;
        continue;
      }
      RowTreeBundle next = prune_with_column(bundle, j, cand.x);
      path_.push_back({sets, cand.x, cand.dist2});
      visit(j + 1, next, partial + cand.dist2, rank_ok);
      path_.pop_back();
    }
    ++stats_.backtracks;
  }

  const ProblemInstance& inst_;
  const SphereDecoder& decoder_;
  SolveStats& stats_;
  std::vector<RealVector> columns_;
  double radius_ = 0.0;
  std::vector<ColumnStep> path_;

  double best_objective_ = std::numeric_limits<double>::infinity();
  std::optional<IntMatrix> best_;
  std::vector<ColumnStep> best_trace_;
  double best_radius_ = 0.0;
};

}  // namespace detail

inline SolveResult solve(const ProblemInstance& inst) {
  inst.validate();
  const auto start = std::chrono::steady_clock::now();
  SolveStats stats;

  DiophResult dioph = solve_diophantine_sparse(inst.a, inst.s, inst.k);
  stats.dioph_nodes = dioph.stats.nodes_visited;
  auto family = std::make_shared<const std::vector<IntVector>>(tree_leaves(dioph.tree));
  if (family->empty()) throw InfeasibleError("the feasible row set F is empty", 0);
  const std::size_t span_rank = int_rank(IntMatrix::from_rows(*family));
  if (span_rank < inst.rank) {
    throw InfeasibleError("F spans rank " + std::to_string(span_rank) + " < N = " +
                              std::to_string(inst.rank),
                          span_rank);
  }

  const SphereDecoder decoder(inst.g);
  const RowTreeBundle root(family, inst.rank);
  double radius = inst.d0 ? *inst.d0
                          : decoder.babai_radius(inst.y.col(0), derive_column_sets(root, 0));

  detail::ColumnSearch search(inst, decoder, stats);
  search.run(root, radius);
  while (!search.found()) {
    radius += 1.0;
    ++stats.radius_expansions;
    search.run(root, radius);
  }
  // Any cheaper X has every column residual below the current total, so one
  // more sweep at that radius settles optimality.
  const double total = search.best_objective();
  if (total > radius * radius * (1.0 + kRadiusSlack)) search.run(root, std::sqrt(total));

  SolveResult result;
  result.x = search.best();
  result.objective = objective(inst.y, inst.g, result.x);
  result.radius = search.best_radius();
  result.trace = search.best_trace();
  stats.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.stats = stats;
  return result;
}

enum class IlsMode {
  kExact,           // argmin over F of ||y - G x||^2
  kNearestToDecoded,  // argmin over F of ||x_hat - x||^2, x_hat = best decoder point
};

// Vector problem min ||y - G x||^2 s.t. x in S^N, A x = 0, ||x||_0 <= K.
// Ties go to the lexicographically smallest x.
inline IntVector solve_ils_eq(const RealVector& y, const RealMatrix& g, const IntMatrix& a,
                              const Alphabet& s, std::size_t k, IlsMode mode = IlsMode::kExact) {
  if (a.cols() != static_cast<std::size_t>(g.cols())) {
    throw DimensionError("A must have as many columns as G");
  }
  if (y.size() != g.rows()) throw DimensionError("y length differs from rows of G");
  const auto family = tree_leaves(solve_diophantine_sparse(a, s, k).tree);
  if (family.empty()) throw InfeasibleError("the feasible set F is empty", 0);

  std::vector<double> score(family.size());
  if (mode == IlsMode::kExact) {
    for (std::size_t i = 0; i < family.size(); ++i) score[i] = residual_norm2(y, g, family[i]);
  } else {
    const SphereDecoder decoder(g);
    const CandidateSets sets(static_cast<std::size_t>(g.cols()), s);
    const IntVector x_hat = decoder.decode(y, decoder.babai_radius(y, sets), sets).front().x;
    for (std::size_t i = 0; i < family.size(); ++i) {
      double d = 0.0;
      for (std::size_t c = 0; c < x_hat.size(); ++c) {
        const double e = static_cast<double>(x_hat[c] - family[i][c]);
        d += e * e;
      }
      score[i] = d;
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < family.size(); ++i)
    if (score[i] < score[best]) best = i;
  return family[best];
}

}  // namespace cils
