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

// Sparse solutions of homogeneous linear Diophantine systems.
//
// The set F = {x in S^L : A x = 0, ||x||_0 <= K} is built as a rooted tree
// over the Hermite normal form of A. Equations are consumed from the last
// nonzero row of H upwards; each one first expands the not-yet-assigned
// columns to the right of its pivot over the whole alphabet (pruning on the
// running nonzero count), then fixes the pivot by exact back-substitution.
// Columns are assigned right to left, so tree depth d holds column L - d.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cils/alphabet.hpp"
#include "cils/intlin.hpp"
#include "cils/matrix.hpp"

namespace cils {

struct DiophStats {
  std::size_t nodes_visited = 0;  // every node created, kept or pruned
  std::size_t leaves = 0;
};

class SolutionTree {
 public:
  // A tree over vectors of `length` columns with nothing assigned yet.
  explicit SolutionTree(std::size_t length) : length_(length) {
    nodes_.push_back({kNoParent, 0, 0});
    frontier_.push_back(0);
  }

  std::size_t length() const noexcept { return length_; }
  std::size_t depth() const noexcept { return depth_; }
  // First (leftmost) column assigned so far; equals length() when depth is 0.
  std::size_t first_column() const noexcept { return length_ - depth_; }
  bool complete() const noexcept { return depth_ == length_; }

  // Number of root-to-frontier paths. A fresh tree has no leaves.
  std::size_t leaf_count() const noexcept { return depth_ == 0 ? 0 : frontier_.size(); }
  // True once every branch has been pruned away.
  bool exhausted() const noexcept { return frontier_.empty(); }

  // Assign the next column (first_column() - 1) every alphabet value,
  // keeping children whose path has at most `k` nonzeros.
  void expand_free(const Alphabet& s, std::size_t k, DiophStats& stats) {
    require_room();
    std::vector<std::uint32_t> next;
    next.reserve(frontier_.size() * s.size());
    for (std::uint32_t leaf : frontier_) {
      const std::uint32_t nnz = nodes_[leaf].nonzeros;
      for (std::int64_t v : s) {
        ++stats.nodes_visited;
        const std::uint32_t child_nnz = nnz + (v != 0 ? 1 : 0);
        if (child_nnz > k) continue;
        next.push_back(add_node(leaf, v, child_nnz));
      }
    }
    frontier_ = std::move(next);
    ++depth_;
  }

  // Assign the next column from h . x = 0, where h[pivot] is the coefficient
  // of the new column and every other nonzero of h lies on assigned columns.
  // Non-integral quotients, values outside `s` and L0 violations are pruned.
  void assign_pivot(std::span<const std::int64_t> h, const Alphabet& s, std::size_t k,
                    DiophStats& stats) {
    require_room();
    const std::size_t pivot = first_column() - 1;
    const std::int64_t hp = h[pivot];
    std::vector<std::uint32_t> next;
    next.reserve(frontier_.size());
    for (std::uint32_t leaf : frontier_) {
      ++stats.nodes_visited;
      const std::int64_t sum = partial_dot(h, leaf);
      if (sum % hp != 0) continue;
      const std::int64_t v = -(sum / hp);
      if (!s.contains(v)) continue;
      const std::uint32_t child_nnz = nodes_[leaf].nonzeros + (v != 0 ? 1 : 0);
      if (child_nnz > k) continue;
      next.push_back(add_node(leaf, v, child_nnz));
    }
    frontier_ = std::move(next);
    ++depth_;
  }

  // Drop branches violating h . x = 0, where h only touches assigned columns.
  void filter_equation(std::span<const std::int64_t> h) {
    std::erase_if(frontier_, [&](std::uint32_t leaf) { return partial_dot(h, leaf) != 0; });
  }

  // Root-to-frontier paths as vectors over columns [first_column(), length()),
  // in natural column order, sorted lexicographically.
  std::vector<IntVector> leaves() const {
    std::vector<IntVector> out;
    if (depth_ == 0) return out;
    out.reserve(frontier_.size());
    for (std::uint32_t leaf : frontier_) {
      IntVector v(depth_);
      std::size_t i = 0;
      for (std::uint32_t n = leaf; nodes_[n].parent != kNoParent; n = nodes_[n].parent) {
        v[i++] = nodes_[n].value;
      }
      out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static constexpr std::uint32_t kNoParent = 0xffffffffu;

  struct Node {
    std::uint32_t parent;
    std::int64_t value;
    std::uint32_t nonzeros;
  };

  void require_room() const {
    if (depth_ >= length_) throw std::logic_error("solution tree already covers every column");
  }

  std::uint32_t add_node(std::uint32_t parent, std::int64_t value, std::uint32_t nnz) {
    if (nodes_.size() >= kNoParent) throw std::length_error("solution tree too large");
    nodes_.push_back({parent, value, nnz});
    return static_cast<std::uint32_t>(nodes_.size() - 1);
  }

  // Sum of h[c] * x[c] over the assigned columns of the path ending at `leaf`.
  std::int64_t partial_dot(std::span<const std::int64_t> h, std::uint32_t leaf) const {
    std::int64_t sum = 0;
    std::size_t col = first_column();
    for (std::uint32_t n = leaf; nodes_[n].parent != kNoParent; n = nodes_[n].parent, ++col) {
      if (h[col] != 0 && nodes_[n].value != 0) {
        sum = checked_add(sum, checked_mul(h[col], nodes_[n].value));
      }
    }
    return sum;
  }

  std::size_t length_;
  std::size_t depth_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> frontier_;
};

// Root-to-leaf vectors of `tree`, lexicographically ordered.
inline std::vector<IntVector> tree_leaves(const SolutionTree& tree) { return tree.leaves(); }

// Extends `tree` with one equation h . x = 0 whose leftmost nonzero is
// h[pivot_col]. Columns between the tree's current first column and the pivot
// become free variables; the pivot is then solved for. If the pivot column is
// already assigned, the equation only filters existing branches.
inline SolutionTree solve_single_equation(std::span<const std::int64_t> h, SolutionTree tree,
                                          std::size_t pivot_col, const Alphabet& s, std::size_t k,
                                          DiophStats* stats = nullptr) {
  if (h.size() != tree.length()) throw DimensionError("equation length differs from tree length");
  if (pivot_col >= h.size() || h[pivot_col] == 0) {
    throw std::invalid_argument("pivot coefficient must be nonzero");
  }
  for (std::size_t c = 0; c < pivot_col; ++c) {
    if (h[c] != 0) throw std::invalid_argument("pivot must be the leftmost nonzero coefficient");
  }
  DiophStats local;
  DiophStats& st = stats ? *stats : local;
  if (pivot_col >= tree.first_column()) {
    tree.filter_equation(h);
    return tree;
  }
  while (tree.first_column() > pivot_col + 1 && !tree.exhausted()) tree.expand_free(s, k, st);
  if (!tree.exhausted()) tree.assign_pivot(h, s, k, st);
  return tree;
}

struct DiophResult {
  SolutionTree tree;
  DiophStats stats;
};

// Builds the tree whose leaves are exactly F = {x in S^L : A x = 0, ||x||_0 <= K}.
template <typename T>
DiophResult solve_diophantine_sparse(const Matrix<T>& a, const Alphabet& s, std::size_t k) {
  if (a.empty()) throw DimensionError("solve_diophantine_sparse: empty constraint matrix");
  const std::size_t length = a.cols();
  if (k > length) throw std::invalid_argument("sparsity bound K exceeds the number of columns");

  const IntMatrix h = to_int64(hermite_normal_form(a).h);
  DiophResult result{SolutionTree(length), {}};
  SolutionTree& tree = result.tree;
  for (std::size_t r = h.rows(); r-- > 0 && !tree.exhausted();) {
    auto pivot = pivot_column(h, r);
    if (!pivot) continue;
    tree = solve_single_equation(h.row(r), std::move(tree), *pivot, s, k, &result.stats);
  }
  while (!tree.complete() && !tree.exhausted()) tree.expand_free(s, k, result.stats);
  result.stats.leaves = tree.complete() ? tree.leaf_count() : 0;
  return result;
}

}  // namespace cils
