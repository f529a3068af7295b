// Copyright 2026 The madmat Authors
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

#include "madmat/io.hpp"

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

namespace madmat {

namespace {

using Json = nlohmann::ordered_json;

constexpr long long kMaxDimension = 64;
constexpr long long kMaxGenerations = 1'000'000;

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

void check_keys(const Json& obj, std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional,
                const char* where) {
  if (!obj.is_object())
    throw ParseError(std::string(where) + " must be a JSON object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : required)
      if (item.key() == key) known = true;
    for (const char* key : optional)
      if (item.key() == key) known = true;
    if (!known)
      throw ParseError(std::string("unknown key \"") + item.key() + "\" in " +
                       where);
  }
  for (const char* key : required) {
    if (!obj.contains(key))
      throw ParseError(std::string("missing key \"") + key + "\" in " + where);
  }
}

long long get_integer(const Json& value, const char* what, long long min,
                      long long max) {
  if (!value.is_number_integer())
    throw ParseError(std::string(what) + " must be a JSON integer");
  if (value.is_number_unsigned() &&
      value.get<std::uint64_t>() >
          static_cast<std::uint64_t>(std::numeric_limits<long long>::max()))
    throw ParseError(std::string(what) + " out of range");
  const long long parsed = value.get<long long>();
  if (parsed < min || parsed > max)
    throw ParseError(std::string(what) + " out of range");
  return parsed;
}

Rational get_rational(const Json& value, const char* what) {
  if (!value.is_string())
    throw ParseError(std::string(what) +
                     " must be a canonical rational string");
  try {
    return parse_rational(value.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::vector<Rational> get_rational_array(const Json& value, std::size_t count,
                                         const char* what) {
  if (!value.is_array() || value.size() != count)
    throw ParseError(std::string(what) + " must be an array of " +
                     std::to_string(count) + " rational strings");
  std::vector<Rational> out;
  out.reserve(count);
  for (const Json& entry : value) out.push_back(get_rational(entry, what));
  return out;
}

// Nested m×n array of rational strings, row-major.
std::vector<Rational> get_rational_grid(const Json& value, int rows, int cols,
                                        const char* what) {
  if (!value.is_array() || value.size() != static_cast<std::size_t>(rows))
    throw ParseError(std::string(what) + " must have " + std::to_string(rows) +
                     " rows");
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(rows) * cols);
  for (const Json& row : value) {
    auto parsed =
        get_rational_array(row, static_cast<std::size_t>(cols), what);
    for (auto& entry : parsed) out.push_back(std::move(entry));
  }
  return out;
}

Json rational_grid_json(const std::vector<Rational>& entries, int rows,
                        int cols) {
  Json grid = Json::array();
  for (int i = 0; i < rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < cols; ++j)
      row.push_back(format_rational(entries[static_cast<std::size_t>(i) *
                                                cols +
                                            j]));
    grid.push_back(std::move(row));
  }
  return grid;
}

Json hyperplanes_json(const std::vector<Hyperplane>& hyperplanes) {
  Json out = Json::array();
  for (const Hyperplane& h : hyperplanes) {
    Json entry;
    entry["coefficients"] = rational_grid_json(
        h.coefficients.entries, h.coefficients.rows, h.coefficients.cols);
    entry["offset"] = format_rational(h.offset);
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<Hyperplane> parse_hyperplanes(const Json& value, int m, int n) {
  if (!value.is_array())
    throw ParseError("hyperplanes must be an array");
  std::vector<Hyperplane> out;
  out.reserve(value.size());
  for (const Json& entry : value) {
    check_keys(entry, {"coefficients", "offset"}, {}, "hyperplane");
    Hyperplane h;
    h.coefficients = RationalMatrix(m, n);
    h.coefficients.entries =
        get_rational_grid(entry.at("coefficients"), m, n, "coefficients");
    h.offset = get_rational(entry.at("offset"), "offset");
    out.push_back(std::move(h));
  }
  return out;
}

// Shared leading fields of configs and certificates; returns a config with
// default regime/budget/constant fields.
ConstructionConfig parse_common_config(const Json& obj) {
  ConstructionConfig config;
  config.m = static_cast<int>(get_integer(obj.at("m"), "m", 1, kMaxDimension));
  config.n = static_cast<int>(get_integer(obj.at("n"), "n", 1, kMaxDimension));
  const Rational edge = get_rational(obj.at("edge"), "edge");
  auto origin = get_rational_grid(obj.at("cube_origin"), config.m, config.n,
                                  "cube_origin");
  config.initial_cube = Cube(config.m, config.n, std::move(origin), edge);
  config.gamma = get_rational_array(
      obj.at("gamma"), static_cast<std::size_t>(config.m), "gamma");
  config.c = get_rational(obj.at("c"), "c");
  config.R = get_integer(obj.at("R"), "R", 1,
                         std::numeric_limits<long long>::max());
  return config;
}

void serialize_common_config(Json& obj, const ConstructionConfig& config) {
  obj["m"] = config.m;
  obj["n"] = config.n;
  obj["edge"] = format_rational(config.initial_cube.edge);
  obj["cube_origin"] =
      rational_grid_json(config.initial_cube.origin, config.m, config.n);
  Json gamma = Json::array();
  for (const Rational& g : config.gamma) gamma.push_back(format_rational(g));
  obj["gamma"] = std::move(gamma);
  obj["c"] = format_rational(config.c);
  obj["R"] = config.R;
}

std::string dump_canonical(const Json& obj) { return obj.dump(2) + "\n"; }

}  // namespace

std::string serialize_config(const ConstructionConfig& config) {
  Json obj;
  serialize_common_config(obj, config);
  obj["hyperplanes"] = hyperplanes_json(config.hyperplanes);
  obj["regime"] =
      config.regime == Regime::kCertifiedParameters ? "certified" : "empirical";
  obj["node_budget"] = config.node_budget;
  obj["const_mn"] = format_rational(config.const_mn);
  obj["cond5_const"] = format_rational(config.cond5_const);
  obj["cond5_epsilon"] = format_rational(config.cond5_epsilon);
  return dump_canonical(obj);
}

ConstructionConfig parse_config(const std::string& text) {
  const Json obj = parse_document(text);
  check_keys(obj, {"m", "n", "edge", "cube_origin", "gamma", "c", "R"},
             {"hyperplanes", "regime", "node_budget", "const_mn",
              "cond5_const", "cond5_epsilon"},
             "config");
  ConstructionConfig config = parse_common_config(obj);
  if (obj.contains("hyperplanes"))
    config.hyperplanes =
        parse_hyperplanes(obj.at("hyperplanes"), config.m, config.n);
  if (obj.contains("regime")) {
    const Json& regime = obj.at("regime");
    if (!regime.is_string())
      throw ParseError("regime must be \"empirical\" or \"certified\"");
    const auto name = regime.get<std::string>();
    if (name == "empirical") {
      config.regime = Regime::kEmpirical;
    } else if (name == "certified") {
      config.regime = Regime::kCertifiedParameters;
    } else {
      throw ParseError("regime must be \"empirical\" or \"certified\"");
    }
  }
  if (obj.contains("node_budget"))
    config.node_budget =
        get_integer(obj.at("node_budget"), "node_budget", 1,
                    std::numeric_limits<long long>::max());
  if (obj.contains("const_mn"))
    config.const_mn = get_rational(obj.at("const_mn"), "const_mn");
  if (obj.contains("cond5_const"))
    config.cond5_const = get_rational(obj.at("cond5_const"), "cond5_const");
  if (obj.contains("cond5_epsilon"))
    config.cond5_epsilon =
        get_rational(obj.at("cond5_epsilon"), "cond5_epsilon");
  return config;
}

std::string serialize_certificate(const Certificate& cert) {
  Json obj;
  serialize_common_config(obj, cert.config);
  obj["K"] = cert.K;
  obj["mode"] = cert.mode == SearchMode::kDfsWitness ? "dfs" : "full";
  obj["hyperplanes"] = hyperplanes_json(cert.config.hyperplanes);
  obj["chain"] = cert.chain;
  obj["observed_removals"] = cert.observed_removals;
  obj["witness"] =
      rational_grid_json(cert.witness.entries, cert.config.m, cert.config.n);
  obj["finite_range_bound"] = format_rational(cert.finite_range_bound);
  return dump_canonical(obj);
}

Certificate parse_certificate(const std::string& text) {
  const Json obj = parse_document(text);
  check_keys(obj,
             {"m", "n", "edge", "cube_origin", "gamma", "c", "R", "K", "mode",
              "hyperplanes", "chain", "observed_removals", "witness",
              "finite_range_bound"},
             {}, "certificate");
  Certificate cert;
  cert.config = parse_common_config(obj);
  cert.K = static_cast<int>(get_integer(obj.at("K"), "K", 0, kMaxGenerations));
  const Json& mode = obj.at("mode");
  if (!mode.is_string())
    throw ParseError("mode must be \"dfs\" or \"full\"");
  const auto mode_name = mode.get<std::string>();
  if (mode_name == "dfs") {
    cert.mode = SearchMode::kDfsWitness;
  } else if (mode_name == "full") {
    cert.mode = SearchMode::kFullFrontier;
  } else {
    throw ParseError("mode must be \"dfs\" or \"full\"");
  }
  cert.config.hyperplanes =
      parse_hyperplanes(obj.at("hyperplanes"), cert.config.m, cert.config.n);
  const Json& chain = obj.at("chain");
  if (!chain.is_array()) throw ParseError("chain must be an integer array");
  for (const Json& entry : chain)
    cert.chain.push_back(get_integer(entry, "chain entry", 0,
                                     std::numeric_limits<long long>::max()));
  const Json& removals = obj.at("observed_removals");
  if (!removals.is_array())
    throw ParseError("observed_removals must be an integer array");
  for (const Json& entry : removals)
    cert.observed_removals.push_back(
        get_integer(entry, "observed_removals entry", 0,
                    std::numeric_limits<long long>::max()));
  cert.witness = RationalMatrix(cert.config.m, cert.config.n);
  cert.witness.entries = get_rational_grid(obj.at("witness"), cert.config.m,
                                           cert.config.n, "witness");
  cert.finite_range_bound =
      get_rational(obj.at("finite_range_bound"), "finite_range_bound");
  return cert;
}

std::string serialize_matrix_file(const MatrixFile& file) {
  Json obj;
  obj["entries"] = rational_grid_json(file.matrix.entries, file.matrix.rows,
                                      file.matrix.cols);
  if (!file.gamma.empty()) {
    Json gamma = Json::array();
    for (const Rational& g : file.gamma) gamma.push_back(format_rational(g));
    obj["gamma"] = std::move(gamma);
  }
  return dump_canonical(obj);
}

MatrixFile parse_matrix_file(const std::string& text) {
  const Json obj = parse_document(text);
  check_keys(obj, {"entries"}, {"gamma"}, "matrix file");
  const Json& entries = obj.at("entries");
  if (!entries.is_array() || entries.empty())
    throw ParseError("entries must be a non-empty array of rows");
  const auto rows = static_cast<long long>(entries.size());
  if (rows > kMaxDimension) throw ParseError("entries has too many rows");
  if (!entries.front().is_array() || entries.front().empty())
    throw ParseError("entries rows must be non-empty arrays");
  const auto cols = static_cast<long long>(entries.front().size());
  if (cols > kMaxDimension) throw ParseError("entries has too many columns");
  MatrixFile file;
  file.matrix = RationalMatrix(static_cast<int>(rows), static_cast<int>(cols));
  file.matrix.entries = get_rational_grid(entries, static_cast<int>(rows),
                                          static_cast<int>(cols), "entries");
  if (obj.contains("gamma"))
    file.gamma = get_rational_array(
        obj.at("gamma"), static_cast<std::size_t>(rows), "gamma");
  return file;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file for reading: " + path);
  std::ostringstream contents;
  contents << in.rdbuf();
  if (in.bad()) throw Error("failed reading file: " + path);
  return contents.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open file for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw Error("failed writing file: " + path);
}

}  // namespace madmat
