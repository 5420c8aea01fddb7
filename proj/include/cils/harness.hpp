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

// Seeded random instances and batch benchmarks.
//
// Instances follow Y = G X + E with G = |N(0,1)|, E ~ N(0, sigma^2). The
// planted X is drawn first (sparse alphabet rows, full row rank); A is then
// a random nonnegative combination of an integer basis of ker(X), so that
// A X^T = 0 holds by construction.

#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "cils/assembler.hpp"
#include "cils/intlin.hpp"
#include "cils/rng.hpp"

namespace cils {

struct GenSpec {
  std::size_t rows = 3;  // N, also the target rank
  std::size_t cols = 7;  // L
  std::size_t m = 4;     // rows of G and Y
  std::size_t p = 7;     // rows of A
  Alphabet s{-1, 0, 1};
  std::size_t k = 4;
  double sigma = 0.2;
  std::uint64_t seed = 1;
  std::size_t trials = 5;

  friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

struct GeneratedInstance {
  ProblemInstance instance;
  IntMatrix planted;
};

struct BenchRecord {
  GenSpec spec;
  std::size_t n = 0;  // rows * cols
  double avg_time = 0.0;
  double avg_nodes = 0.0;
  std::size_t recovery_count = 0;
};

inline constexpr int kGenerationRetries = 1000;

namespace detail {

inline IntVector draw_sparse_row(Rng& rng, const GenSpec& spec) {
  std::vector<std::size_t> cols(spec.cols);
  std::iota(cols.begin(), cols.end(), 0);
  const std::size_t support = std::min(spec.k, spec.cols);
  for (std::size_t i = 0; i < support; ++i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(i),
                                                            static_cast<std::int64_t>(spec.cols - 1)));
    std::swap(cols[i], cols[j]);
  }
  IntVector row(spec.cols, 0);
  for (std::size_t i = 0; i < support; ++i) {
    row[cols[i]] = spec.s[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(spec.s.size()) - 1))];
  }
  return row;
}

// Rows of an integer lattice basis of {a : X a^T = 0}.
inline std::vector<IntVector> integer_kernel(const IntMatrix& x) {
  const HnfResult hnf = hermite_normal_form(x.transpose());
  const std::size_t r = int_rank(x);
  std::vector<IntVector> basis;
  for (std::size_t i = r; i < hnf.u.rows(); ++i) {
    IntVector v(hnf.u.cols());
    for (std::size_t c = 0; c < v.size(); ++c) v[c] = narrow_checked(hnf.u(i, c));
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

// Deterministic in `spec` (including the seed).
inline GeneratedInstance generate_instance(const GenSpec& spec) {
  if (spec.rows == 0 || spec.rows > spec.cols || spec.k > spec.cols || spec.m < spec.rows ||
      spec.p == 0 || spec.trials == 0) {
    throw GenerationError("inconsistent generation spec (need 1 <= N <= L, K <= L, M >= N, P >= 1)");
  }
  Rng rng(spec.seed);

  std::optional<IntMatrix> planted;
  for (int attempt = 0; attempt < kGenerationRetries && !planted; ++attempt) {
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < spec.rows; ++i) rows.push_back(detail::draw_sparse_row(rng, spec));
    IntMatrix x = IntMatrix::from_rows(rows);
    if (int_rank(x) == spec.rows) planted = std::move(x);
  }
  if (!planted) throw GenerationError("could not draw a rank-N planted X for this spec");

  const auto kernel = detail::integer_kernel(*planted);
  IntMatrix a(spec.p, spec.cols, 0);
  if (!kernel.empty()) {
    const std::size_t want = std::min(spec.p, kernel.size());
    bool ok = false;
    for (int attempt = 0; attempt < kGenerationRetries && !ok; ++attempt) {
      for (std::size_t r = 0; r < spec.p; ++r) {
        for (std::size_t c = 0; c < spec.cols; ++c) a(r, c) = 0;
        for (const auto& b : kernel) {
          const std::int64_t w = rng.uniform_int(0, 9);
          for (std::size_t c = 0; c < spec.cols; ++c) {
            a(r, c) = checked_add(a(r, c), checked_mul(w, b[c]));
          }
        }
      }
      ok = int_rank(a) == want;
    }
    if (!ok) throw GenerationError("could not draw a constraint matrix of full kernel rank");
  }

  const auto m = static_cast<Eigen::Index>(spec.m);
  const auto n = static_cast<Eigen::Index>(spec.rows);
  const auto l = static_cast<Eigen::Index>(spec.cols);
  RealMatrix g(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = std::abs(rng.normal());
  RealMatrix noise(m, l);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < l; ++j) noise(i, j) = spec.sigma * rng.normal();

  GeneratedInstance out;
  out.instance.y = g * to_real(*planted) + noise;
  out.instance.g = std::move(g);
  out.instance.a = std::move(a);
  out.instance.s = spec.s;
  out.instance.k = spec.k;
  out.instance.rank = spec.rows;
  out.planted = std::move(*planted);
  return out;
}

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline void write_bench_csv(const std::vector<BenchRecord>& records, std::ostream& os) {
  os << "size,rank,n,avg_time_s,avg_nodes,recovered,trials\n";
  for (const auto& r : records) {
    os << r.spec.rows << 'x' << r.spec.cols << ',' << r.spec.rows << ',' << r.n << ','
       << format_double(r.avg_time) << ',' << format_double(r.avg_nodes) << ','
       << r.recovery_count << ',' << r.spec.trials << '\n';
  }
}

// Runs every spec for spec.trials trials (trial t uses derive_seed(seed, t)),
// verifies each returned X, and averages. Writes CSV to `out` when nonempty.
inline std::vector<BenchRecord> run_bench(const std::vector<GenSpec>& specs,
                                          const std::filesystem::path& out = {},
                                          std::ostream* log = nullptr) {
  std::vector<BenchRecord> records;
  for (const auto& spec : specs) {
    BenchRecord rec{spec, spec.rows * spec.cols, 0.0, 0.0, 0};
    for (std::size_t t = 0; t < spec.trials; ++t) {
      GenSpec trial = spec;
      trial.seed = derive_seed(spec.seed, t);
      const GeneratedInstance gen = generate_instance(trial);
      const SolveResult res = solve(gen.instance);
      if (auto bad = feasibility_violation(gen.instance, res.x)) {
        throw Error("benchmark solve returned an infeasible X: " + *bad);
      }
      const bool recovered = res.x == gen.planted;
      rec.avg_time += res.stats.wall_time;
      rec.avg_nodes += static_cast<double>(res.stats.dioph_nodes);
      rec.recovery_count += recovered ? 1 : 0;
      if (log) {
        *log << spec.rows << 'x' << spec.cols << " trial " << t << ": feasible, "
             << (recovered ? "recovered" : "not recovered") << ", nodes "
             << res.stats.dioph_nodes << ", " << res.stats.wall_time << " s\n";
      }
    }
    rec.avg_time /= static_cast<double>(spec.trials);
    rec.avg_nodes /= static_cast<double>(spec.trials);
    records.push_back(rec);
  }
  if (!out.empty()) {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw Error("cannot open " + out.string() + " for writing");
    write_bench_csv(records, f);
    if (!f) throw Error("failed writing " + out.string());
  }
  return records;
}

}  // namespace cils
