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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. CILS_DATA_DIR is set by the build.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cils/cils.hpp"

namespace {

using namespace cils;
using Clock = std::chrono::steady_clock;

const IntMatrix kXa{{1, 1, -1, -1, 0, 0, 0}, {0, -1, -1, 1, 1, 0, 0}, {0, 1, 0, 1, 0, -1, -1}};
const Alphabet kTernary{-1, 0, 1};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

ProblemInstance example() {
  return load_instance(std::filesystem::path(CILS_DATA_DIR) / "example1.json");
}

RealMatrix gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  RealMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rng.normal();
  return m;
}

IntMatrix random_ints(Rng& rng, std::size_t rows, std::size_t cols, std::int64_t lo, std::int64_t hi) {
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.uniform_int(lo, hi);
  return m;
}

bool in_family(const std::vector<IntVector>& f, const IntVector& v) {
  return std::find(f.begin(), f.end(), v) != f.end();
}

std::string values(const Alphabet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  return os.str() + '}';
}

// Each check returns an empty string on success, otherwise the reason.
using Check = std::function<std::string()>;

std::string criterion_example() {
  const ProblemInstance inst = example();
  const auto t0 = Clock::now();
  const SolveResult res = solve(inst);
  const double t = seconds_since(t0);
  if (!(res.x == kXa)) return "returned X differs from X_a";
  if (t >= 1.0) return "took " + std::to_string(t) + " s";
  return "";
}

std::string criterion_family() {
  const ProblemInstance inst = example();
  const auto f = tree_leaves(solve_diophantine_sparse(inst.a, inst.s, inst.k).tree);
  if (f.size() != 7) return "F has " + std::to_string(f.size()) + " members";
  if (f != oracle_F(inst.a, inst.s, inst.k)) return "F differs from the exhaustive filter";
  for (std::size_t i = 0; i < 3; ++i) {
    IntVector row = kXa.row_vector(i), neg = row;
    for (auto& v : neg) v = -v;
    if (!in_family(f, row) || !in_family(f, neg)) return "row " + std::to_string(i) + " or its negation missing";
  }
  if (!in_family(f, IntVector(7, 0))) return "zero vector missing";
  return "";
}

std::string criterion_trace() {
  const ProblemInstance inst = example();
  const SolveResult res = solve(inst);
  if (res.trace.size() != 7) return "trace has " + std::to_string(res.trace.size()) + " steps";
  const std::vector<IntVector> want_x{{1, 0, 0}, {1, -1, 1}, {-1, -1, 0}};
  for (std::size_t j = 0; j < 3; ++j)
    if (res.trace[j].x_c != want_x[j]) return "x_C" + std::to_string(j + 1) + " = " + to_string(res.trace[j].x_c);
  const std::vector<std::vector<Alphabet>> want_sets{
      {Alphabet{1}, kTernary, kTernary},
      {Alphabet{-1}, Alphabet{-1, 0}, Alphabet{0, 1}},
  };
  for (std::size_t step = 0; step < 2; ++step) {
    for (std::size_t i = 0; i < 3; ++i) {
      const Alphabet& got = res.trace[step + 1].sets[i];
      if (!(got == want_sets[step][i])) {
        return "S_{" + std::to_string(i + 1) + "," + std::to_string(step + 2) + "} = " + values(got);
      }
    }
  }
  return "";
}

bool all_zero(const std::vector<__int128>& acc) {
  return std::all_of(acc.begin(), acc.end(), [](__int128 v) { return v == 0; });
}

std::string criterion_hnf() {
  Rng rng(2024);
  std::size_t kernel_hits = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto rows = static_cast<std::size_t>(rng.uniform_int(1, 8));
    const auto cols = static_cast<std::size_t>(rng.uniform_int(1, 12));
    IntMatrix a = random_ints(rng, rows, cols, -9, 9);
    if (rows > 1 && trial % 3 == 0) {
      // Repeat a row combination so some kernels are larger.
      for (std::size_t c = 0; c < cols; ++c) a(rows - 1, c) = a(0, c) - a(rows - 2, c);
    }
    const HnfResult hnf = hermite_normal_form(a);
    if (!validate_hnf(hnf.h, hnf.u, a)) return "validation failed on trial " + std::to_string(trial);
    const IntMatrix h = to_int64(hnf.h);
    std::vector<std::size_t> idx(cols, 0);
    IntVector x(cols);
    std::vector<__int128> ax(rows), hx(rows);
    while (true) {
      for (std::size_t c = 0; c < cols; ++c) x[c] = kTernary[idx[c]];
      for (std::size_t r = 0; r < rows; ++r) {
        ax[r] = hx[r] = 0;
        for (std::size_t c = 0; c < cols; ++c) {
          ax[r] += static_cast<__int128>(a(r, c)) * x[c];
          hx[r] += static_cast<__int128>(h(r, c)) * x[c];
        }
      }
      if (all_zero(ax) != all_zero(hx)) return "null spaces differ on trial " + std::to_string(trial);
      kernel_hits += all_zero(ax);
      std::size_t pos = cols;
      while (pos > 0 && ++idx[pos - 1] == kTernary.size()) idx[--pos] = 0;
      if (pos == 0) break;
    }
  }
  if (kernel_hits <= 200) return "enumeration found no nonzero kernel vectors";
  const IntMatrix a0{{8, 2, 10, 0, 12, 2, 0}, {4, 6, 9, 1, 14, 5, 2}, {2, 0, 1, 1, 0, 1, 0}, {2, 1, 3, 0, 4, 0, 1}};
  const IntMatrix h0{{2, 0, 0, 2, -2, -8, 10}, {0, 1, 0, 1, 0, -19, 21}, {0, 0, 1, -1, 2, 9, -10}, {0, 0, 0, 0, 0, -18, 18}};
  const IntMatrix u0{{-3, -1, 3, 12}, {-6, -2, 3, 25}, {3, 1, -2, -12}, {-5, -2, 2, 22}};
  if (!validate_hnf(to_big(h0), to_big(u0), a0)) return "reference triple rejected";
  return "";
}

std::string criterion_sphere() {
  Rng rng(7);
  const auto t0 = Clock::now();
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = rng.uniform_int(1, 5);
    const auto m = n + rng.uniform_int(0, 2);
    const RealMatrix g = gaussian(rng, m, n);
    const RealVector y = gaussian(rng, m, 1) * 2.0;
    CandidateSets sets;
    for (std::int64_t i = 0; i < n; ++i) {
      const auto size = rng.uniform_int(1, 5);
      std::vector<std::int64_t> vals;
      while (static_cast<std::int64_t>(vals.size()) < size) {
        const auto v = rng.uniform_int(-4, 4);
        if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
      }
      sets.emplace_back(vals);
    }
    const double radius = 0.25 + 3.0 * rng.uniform01();
    const auto got = sphere_decode(y, g, radius, sets);
    const auto want = oracle_sphere(y, g, radius, sets);
    if (got.size() != want.size()) return "trial " + std::to_string(trial) + ": candidate counts differ";
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (got[i].x != want[i].x) return "trial " + std::to_string(trial) + ": ordering differs";
    }
  }
  const double t = seconds_since(t0);
  if (t >= 10.0) return "took " + std::to_string(t) + " s";
  return "";
}

std::string criterion_optimality() {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    GenSpec spec;
    spec.rows = 1 + seed % 3;
    spec.cols = 4 + seed % 4;
    spec.m = spec.rows + 1;
    spec.p = 1 + seed % 4;
    spec.k = std::min<std::size_t>(4, spec.cols);
    spec.sigma = 0.2;
    spec.seed = seed;
    const ProblemInstance inst = generate_instance(spec).instance;
    const SolveResult res = solve(inst);
    const SolveResult ref = oracle_solve(inst);
    if (std::abs(res.objective - ref.objective) > 1e-9 * std::max(1.0, ref.objective)) {
      return "seed " + std::to_string(seed) + ": objective " + format_double(res.objective) +
             " vs oracle " + format_double(ref.objective);
    }
    if (auto bad = feasibility_violation(inst, res.x)) return "seed " + std::to_string(seed) + ": " + *bad;
  }
  return "";
}

std::string criterion_recovery() {
  GenSpec spec;  // N=3, L=7, M=4, K=4, sigma=0.2, 5 trials
  const auto rec = run_bench({spec}).front();
  if (rec.recovery_count < 4) return "recovered " + std::to_string(rec.recovery_count) + " of 5";
  return "";
}

double average_nodes(std::size_t cols, const Alphabet& s) {
  double total = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    GenSpec spec;
    spec.cols = cols;
    spec.p = 4;
    spec.s = s;
    spec.seed = seed;
    const ProblemInstance inst = generate_instance(spec).instance;
    total += static_cast<double>(solve_diophantine_sparse(inst.a, inst.s, inst.k).stats.nodes_visited);
  }
  return total / 5.0;
}

std::string criterion_scaling() {
  double prev = 0.0;
  std::string trend;
  for (std::size_t cols : {5, 7, 9}) {
    const double avg = average_nodes(cols, kTernary);
    trend += " L=" + std::to_string(cols) + ":" + format_double(avg);
    if (avg < prev) return "N_F decreased:" + trend;
    prev = avg;
  }
  const double narrow = average_nodes(7, kTernary);
  const double wide = average_nodes(7, Alphabet::range(-2, 2));
  if (!(wide > narrow)) return "N_F did not grow with the alphabet: " + format_double(narrow) + " -> " + format_double(wide);
  return "";
}

std::string criterion_ils() {
  Rng rng(99);
  std::size_t equal_cases = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(3, 5));
    const auto en = static_cast<Eigen::Index>(n);
    const RealMatrix g = gaussian(rng, en + 1, en);
    const IntMatrix a = random_ints(rng, 1, n, -2, 2);
    const std::size_t k = n - 1;
    const auto family = oracle_F(a, kTernary, k);
    const IntVector& x0 = family[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(family.size()) - 1))];
    RealVector y = gaussian(rng, en + 1, 1) * 0.3;
    for (Eigen::Index i = 0; i < y.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) y(i) += g(i, static_cast<Eigen::Index>(j)) * static_cast<double>(x0[j]);

    double best = residual_norm2(y, g, family.front());
    for (const auto& v : family) best = std::min(best, residual_norm2(y, g, v));
    const IntVector exact = solve_ils_eq(y, g, a, kTernary, k);
    const double exact_obj = residual_norm2(y, g, exact);
    if (!in_family(family, exact) || exact_obj != best) return "trial " + std::to_string(trial) + ": exact mode missed the argmin";
    const IntVector heur = solve_ils_eq(y, g, a, kTernary, k, IlsMode::kNearestToDecoded);
    const double heur_obj = residual_norm2(y, g, heur);
    if (heur_obj < exact_obj) return "trial " + std::to_string(trial) + ": heuristic beat the exact mode";
    // Unconstrained best point over S^N, found independently of the decoder.
    const IntVector x_hat = oracle_sphere(y, g, 1e3, CandidateSets(n, kTernary)).front().x;
    if (in_family(family, x_hat)) {
      ++equal_cases;
      if (heur_obj != exact_obj) return "trial " + std::to_string(trial) + ": decoder point in F but objectives differ";
    }
  }
  if (equal_cases == 0) return "no trial exercised the decoder-point-in-F case";
  return "";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Check>> criteria{
      {"worked example returns X_a in under 1 s", criterion_example},
      {"worked example F has the 7 expected members", criterion_family},
      {"worked example column trace and candidate sets", criterion_trace},
      {"HNF validation and null-space equivalence on 200 matrices", criterion_hnf},
      {"sphere decoder equals exhaustive search on 100 queries", criterion_sphere},
      {"solve matches the oracle objective on 25 instances", criterion_optimality},
      {"planted X recovered in at least 4 of 5 trials", criterion_recovery},
      {"N_F grows with L and with the alphabet", criterion_scaling},
      {"vector solver exact and heuristic modes on 50 instances", criterion_ils},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string reason;
    try {
      reason = criteria[i].second();
    } catch (const std::exception& e) {
      reason = std::string("exception: ") + e.what();
    }
    if (reason.empty()) {
      std::printf("PASS %zu %s\n", i + 1, criteria[i].first.c_str());
    } else {
      std::printf("FAIL %zu %s: %s\n", i + 1, criteria[i].first.c_str(), reason.c_str());
      ++failures;
    }
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
