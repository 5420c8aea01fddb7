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

// cils: command-line front end.
//
//   cils solve <instance.json> [--radius R] [--stats] [--json]
//   cils check <instance.json>
//   cils gen --rows N --cols L [--m M] [--p P] [--alphabet=-1,0,1] [--k K]
//            [--sigma S] [--seed SEED] --out <instance.json>
//   cils bench <specs.json> --out <results.csv>
//
// Exit codes: 0 success, 1 input or usage error, 2 infeasible instance,
// 3 oracle budget exceeded, 4 solver and oracle disagree.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "cils/cils.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitBudget = 3;
constexpr int kExitMismatch = 4;

cils::OracleBudget budget_from_env() {
  cils::OracleBudget budget;
  if (const char* env = std::getenv("CILS_ORACLE_BUDGET")) {
    try {
      budget.max_enumeration = std::stoull(env);
    } catch (const std::exception&) {
      throw cils::InputError(std::string("CILS_ORACLE_BUDGET is not a number: ") + env);
    }
  }
  return budget;
}

std::filesystem::path planted_path(const std::filesystem::path& instance) {
  std::filesystem::path p = instance;
  p.replace_extension();
  p += ".planted.json";
  return p;
}

int cmd_solve(const std::string& path, std::optional<double> radius, bool stats, bool json) {
  cils::ProblemInstance inst = cils::load_instance(path);
  if (radius) inst.d0 = *radius;
  const cils::SolveResult res = cils::solve(inst);
  if (json) {
    cils::Json out = cils::result_to_json(res);
    if (!stats) out.erase("stats");
    std::cout << out.dump() << '\n';
    return kExitOk;
  }
  std::cout << "X =\n" << res.x << "objective = " << cils::format_double(res.objective) << '\n';
  if (stats) {
    const auto& s = res.stats;
    std::cout << "dioph_nodes = " << s.dioph_nodes << '\n'
              << "sphere_calls = " << s.sphere_calls << '\n'
              << "radius_expansions = " << s.radius_expansions << '\n'
              << "backtracks = " << s.backtracks << '\n'
              << "wall_time_s = " << s.wall_time << '\n';
  }
  return kExitOk;
}

int cmd_check(const std::string& path) {
  const cils::ProblemInstance inst = cils::load_instance(path);
  const cils::OracleBudget budget = budget_from_env();
  const cils::SolveResult oracle = cils::oracle_solve(inst, budget);
  const cils::SolveResult res = cils::solve(inst);
  const double scale = std::max(1.0, std::abs(oracle.objective));
  const bool match = std::abs(res.objective - oracle.objective) <= 1e-9 * scale;
  std::cout << "solver objective = " << cils::format_double(res.objective) << '\n'
            << "oracle objective = " << cils::format_double(oracle.objective) << '\n'
            << (match ? "match" : "MISMATCH") << '\n';
  return match ? kExitOk : kExitMismatch;
}

int cmd_gen(const cils::GenSpec& spec, const std::string& out) {
  const cils::GeneratedInstance gen = cils::generate_instance(spec);
  cils::save_instance(gen.instance, out);
  const cils::Json planted = {{"X", cils::matrix_to_json(gen.planted)}};
  const auto sidecar = planted_path(out);
  std::ofstream f(sidecar, std::ios::binary);
  if (!f) throw cils::Error("cannot open " + sidecar.string() + " for writing");
  f << cils::dump_json(planted);
  std::cout << "wrote " << out << " and " << sidecar.string() << '\n';
  return kExitOk;
}

int cmd_bench(const std::string& specfile, const std::string& out) {
  const auto specs = cils::parse_gen_specs(cils::io_detail::read_file(specfile), specfile);
  const auto records = cils::run_bench(specs, out, &std::cerr);
  cils::write_bench_csv(records, std::cout);
  return kExitOk;
}

std::vector<std::int64_t> parse_alphabet(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw cils::InputError("bad alphabet entry '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained integer least-squares solver"};
  app.require_subcommand(1);

  std::string path;
  std::optional<double> radius;
  bool stats = false, json = false;
  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  solve->add_option("instance", path, "Instance JSON file")->required();
  solve->add_option("--radius", radius, "Initial sphere radius (overrides d0)");
  solve->add_flag("--stats", stats, "Print solver statistics");
  solve->add_flag("--json", json, "Emit a JSON result");

  auto* check = app.add_subcommand("check", "Solve and compare against the brute-force oracle");
  check->add_option("instance", path, "Instance JSON file")->required();

  cils::GenSpec spec;
  std::string alphabet = "-1,0,1";
  std::string out;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--rows", spec.rows, "Rows of X (target rank N)")->required();
  gen->add_option("--cols", spec.cols, "Columns of X (L)")->required();
  gen->add_option("--m", spec.m, "Rows of G and Y");
  gen->add_option("--p", spec.p, "Rows of A");
  gen->add_option("--alphabet", alphabet, "Comma-separated alphabet");
  gen->add_option("--k", spec.k, "Per-row sparsity bound");
  gen->add_option("--sigma", spec.sigma, "Noise standard deviation");
  gen->add_option("--seed", spec.seed, "Random seed");
  gen->add_option("--out", out, "Output instance path")->required();

  std::string specfile;
  auto* bench = app.add_subcommand("bench", "Run a benchmark spec file");
  bench->add_option("specfile", specfile, "JSON array of generation specs")->required();
  bench->add_option("--out", out, "CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*solve) return cmd_solve(path, radius, stats, json);
    if (*check) return cmd_check(path);
    if (*gen) {
      spec.s = cils::Alphabet(parse_alphabet(alphabet));
      return cmd_gen(spec, out);
    }
    if (*bench) return cmd_bench(specfile, out);
  } catch (const cils::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << " (certificate rank " << e.certificate_rank() << ")\n";
    return kExitInfeasible;
  } catch (const cils::BudgetExceeded& e) {
    std::cerr << "oracle budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
