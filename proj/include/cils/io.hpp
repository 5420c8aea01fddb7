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

// JSON instance files:
//   {"Y": [[..], ..], "G": [[..], ..], "A": [[..], ..], "S": [..],
//    "K": k, "N": n, "d0": r (optional)}
// Load errors carry the line of the offending key.

#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cils/assembler.hpp"
#include "cils/harness.hpp"

namespace cils {

using Json = nlohmann::json;

namespace io_detail {

inline std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Line of the first occurrence of "key", or 1 when absent.
inline std::size_t line_of_key(std::string_view text, std::string_view key) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const auto pos = text.find(quoted);
  return pos == std::string_view::npos ? 1 : line_of_offset(text, pos);
}

class Reader {
 public:
  Reader(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  [[noreturn]] void fail(std::string_view key, const std::string& msg) const {
    throw InputError(source_ + ":" + std::to_string(line_of_key(text_, key)) + ": " + msg);
  }

  const Json& field(const Json& doc, const char* key) const {
    if (!doc.contains(key)) fail(key, std::string("missing key \"") + key + "\"");
    return doc.at(key);
  }

  RealMatrix real_matrix(const Json& doc, const char* key) const {
    const Json& v = field(doc, key);
    if (!v.is_array() || v.empty()) fail(key, std::string(key) + " must be a nonempty array of rows");
    const std::size_t cols = v.front().is_array() ? v.front().size() : 0;
    if (cols == 0) fail(key, std::string(key) + " rows must be nonempty arrays");
    RealMatrix m(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < v.size(); ++r) {
      if (!v[r].is_array() || v[r].size() != cols) fail(key, std::string(key) + " is ragged");
      for (std::size_t c = 0; c < cols; ++c) {
        if (!v[r][c].is_number()) fail(key, std::string(key) + " entries must be numbers");
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v[r][c].get<double>();
      }
    }
    return m;
  }

  IntMatrix int_matrix(const Json& doc, const char* key) const {
    const Json& v = field(doc, key);
    if (!v.is_array() || v.empty() || !v.front().is_array() || v.front().empty()) {
      fail(key, std::string(key) + " must be a nonempty array of nonempty rows");
    }
    std::vector<IntVector> rows;
    for (const auto& row : v) {
      if (!row.is_array() || row.size() != v.front().size()) fail(key, std::string(key) + " is ragged");
      IntVector r;
      for (const auto& e : row) {
        if (!e.is_number_integer()) fail(key, std::string(key) + " entries must be integers");
        r.push_back(e.get<std::int64_t>());
      }
      rows.push_back(std::move(r));
    }
    return IntMatrix::from_rows(rows);
  }

  std::size_t count(const Json& doc, const char* key) const {
    const Json& v = field(doc, key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      fail(key, std::string(key) + " must be a nonnegative integer");
    }
    return v.get<std::size_t>();
  }

  Alphabet alphabet(const Json& doc, const char* key) const {
    const Json& v = field(doc, key);
    if (!v.is_array() || v.empty()) fail(key, std::string(key) + " must be a nonempty integer array");
    std::vector<std::int64_t> vals;
    for (const auto& e : v) {
      if (!e.is_number_integer()) fail(key, std::string(key) + " entries must be integers");
      vals.push_back(e.get<std::int64_t>());
    }
    try {
      return Alphabet(std::move(vals));
    } catch (const std::invalid_argument& e) {
      fail(key, e.what());
    }
  }

 private:
  std::string_view text_;
  std::string source_;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw Error("failed writing " + path.string());
}

inline Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(source + ":" + std::to_string(line_of_offset(text, e.byte)) +
                     ": invalid JSON: " + e.what());
  }
}

}  // namespace io_detail

inline Json matrix_to_json(const RealMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

inline Json matrix_to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m.row_vector(r));
  return out;
}

inline ProblemInstance parse_instance(std::string_view text, const std::string& source = "<input>") {
  const Json doc = io_detail::parse_json(text, source);
  const io_detail::Reader rd(text, source);
  if (!doc.is_object()) throw InputError(source + ":1: instance must be a JSON object");
  ProblemInstance inst;
  inst.y = rd.real_matrix(doc, "Y");
  inst.g = rd.real_matrix(doc, "G");
  inst.a = rd.int_matrix(doc, "A");
  inst.s = rd.alphabet(doc, "S");
  inst.k = rd.count(doc, "K");
  inst.rank = rd.count(doc, "N");
  if (doc.contains("d0")) {
    if (!doc["d0"].is_number()) rd.fail("d0", "d0 must be a number");
    inst.d0 = doc["d0"].get<double>();
  }
  // Report the first failing cross-check at the key it concerns.
  if (inst.g.rows() != inst.y.rows()) rd.fail("G", "G has a different number of rows than Y");
  if (inst.a.cols() != static_cast<std::size_t>(inst.y.cols())) {
    rd.fail("A", "A has " + std::to_string(inst.a.cols()) + " columns but Y has " +
                     std::to_string(inst.y.cols()));
  }
  if (static_cast<std::size_t>(inst.g.cols()) != inst.rank) {
    rd.fail("N", "N must equal the number of columns of G");
  }
  if (inst.k > inst.num_cols()) {
    rd.fail("K", "K = " + std::to_string(inst.k) + " exceeds L = " + std::to_string(inst.num_cols()));
  }
  try {
    inst.validate();
  } catch (const DimensionError& e) {
    throw InputError(source + ":1: " + e.what());
  }
  return inst;
}

inline ProblemInstance load_instance(const std::filesystem::path& path) {
  return parse_instance(io_detail::read_file(path), path.string());
}

inline Json instance_to_json(const ProblemInstance& inst) {
  Json doc;
  doc["Y"] = matrix_to_json(inst.y);
  doc["G"] = matrix_to_json(inst.g);
  doc["A"] = matrix_to_json(inst.a);
  doc["S"] = std::vector<std::int64_t>(inst.s.begin(), inst.s.end());
  doc["K"] = inst.k;
  doc["N"] = inst.rank;
  if (inst.d0) doc["d0"] = *inst.d0;
  return doc;
}

inline std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

inline void save_instance(const ProblemInstance& inst, const std::filesystem::path& path) {
  io_detail::write_file(path, dump_json(instance_to_json(inst)));
}

inline Json stats_to_json(const SolveStats& s) {
  return {{"dioph_nodes", s.dioph_nodes},
          {"sphere_calls", s.sphere_calls},
          {"radius_expansions", s.radius_expansions},
          {"backtracks", s.backtracks},
          {"wall_time", s.wall_time}};
}

inline Json result_to_json(const SolveResult& r) {
  return {{"X", matrix_to_json(r.x)}, {"objective", r.objective}, {"stats", stats_to_json(r.stats)}};
}

// Benchmark spec files hold an array of objects with keys rows, cols, m, p,
// S, K, sigma, seed, trials; all but rows and cols are optional.
inline std::vector<GenSpec> parse_gen_specs(std::string_view text, const std::string& source) {
  const Json doc = io_detail::parse_json(text, source);
  const io_detail::Reader rd(text, source);
  if (!doc.is_array()) throw InputError(source + ":1: spec file must be a JSON array");
  std::vector<GenSpec> specs;
  for (const auto& item : doc) {
    if (!item.is_object()) throw InputError(source + ":1: each spec must be an object");
    GenSpec s;
    s.rows = rd.count(item, "rows");
    s.cols = rd.count(item, "cols");
    if (item.contains("m")) s.m = rd.count(item, "m");
    if (item.contains("p")) s.p = rd.count(item, "p");
    if (item.contains("S")) s.s = rd.alphabet(item, "S");
    if (item.contains("K")) s.k = rd.count(item, "K");
    if (item.contains("sigma")) {
      if (!item["sigma"].is_number() || item["sigma"].get<double>() < 0) rd.fail("sigma", "sigma must be >= 0");
      s.sigma = item["sigma"].get<double>();
    }
    if (item.contains("seed")) {
      if (!item["seed"].is_number_integer()) rd.fail("seed", "seed must be an integer");
      s.seed = item["seed"].get<std::uint64_t>();
    }
    if (item.contains("trials")) s.trials = rd.count(item, "trials");
    if (s.trials == 0) rd.fail("trials", "trials must be >= 1");
    if (s.k > s.cols) rd.fail("K", "K exceeds cols");
    specs.push_back(s);
  }
  return specs;
}

}  // namespace cils
