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

#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace cils {

// Finite set of distinct integers, stored in increasing order.
class Alphabet {
 public:
  Alphabet(std::initializer_list<std::int64_t> values)
      : Alphabet(std::vector<std::int64_t>(values)) {}

  explicit Alphabet(std::vector<std::int64_t> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("alphabet must be nonempty");
    std::sort(values_.begin(), values_.end());
    if (std::adjacent_find(values_.begin(), values_.end()) != values_.end()) {
      throw std::invalid_argument("alphabet contains duplicate values");
    }
  }

  // Contiguous range {lo, ..., hi}.
  static Alphabet range(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("empty alphabet range");
    std::vector<std::int64_t> v;
    for (std::int64_t x = lo; x <= hi; ++x) v.push_back(x);
    return Alphabet(std::move(v));
  }

  std::span<const std::int64_t> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::int64_t min() const noexcept { return values_.front(); }
  std::int64_t max() const noexcept { return values_.back(); }
  std::int64_t operator[](std::size_t i) const { return values_[i]; }

  bool contains(std::int64_t v) const {
    return std::binary_search(values_.begin(), values_.end(), v);
  }

  bool is_symmetric() const {
    return std::all_of(values_.begin(), values_.end(),
                       [this](std::int64_t v) { return contains(-v); });
  }

  // Members v with lo <= v <= hi.
  std::span<const std::int64_t> between(double lo, double hi) const {
    auto first = std::lower_bound(values_.begin(), values_.end(), lo,
                                  [](std::int64_t v, double b) { return static_cast<double>(v) < b; });
    auto last = std::upper_bound(first, values_.end(), hi,
                                 [](double b, std::int64_t v) { return b < static_cast<double>(v); });
    return {first, last};
  }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::int64_t> values_;
};

}  // namespace cils
