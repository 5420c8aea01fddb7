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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cils {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed-width integer arithmetic would have wrapped around.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Operand shapes are incompatible.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Numerical factorization failed (e.g. rank-deficient G).
class DecompositionError : public Error {
 public:
  using Error::Error;
};

// No feasible point exists. `certificate_rank` is the rank of the stacked
// feasible row set, which is below the requested rank.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, std::size_t certificate_rank)
      : Error(what), certificate_rank_(certificate_rank) {}
  std::size_t certificate_rank() const noexcept { return certificate_rank_; }

 private:
  std::size_t certificate_rank_;
};

// An exhaustive oracle refused to run because the enumeration is too large.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Random instance generation gave up after its retry cap.
class GenerationError : public Error {
 public:
  using Error::Error;
};

// Malformed input file.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace cils
