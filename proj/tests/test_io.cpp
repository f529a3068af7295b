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

#include <doctest.h>

#include <string>
#include <vector>

namespace madmat {
namespace {

ConstructionConfig sample_config() {
  ConstructionConfig config;
  config.m = 1;
  config.n = 2;
  config.initial_cube =
      Cube(1, 2, {make_rational(1, 4), make_rational(1, 4)},
           make_rational(1, 2));
  config.gamma = {make_rational(1, 3)};
  config.c = make_rational(1, 100);
  config.R = 4;
  return config;
}

// Canonical serialization of sample_config(), pinned byte for byte.
const char* const kCanonicalConfig = R"({
  "m": 1,
  "n": 2,
  "edge": "1/2",
  "cube_origin": [
    [
      "1/4",
      "1/4"
    ]
  ],
  "gamma": [
    "1/3"
  ],
  "c": "1/100",
  "R": 4,
  "hyperplanes": [],
  "regime": "empirical",
  "node_budget": 20000000,
  "const_mn": "1",
  "cond5_const": "1",
  "cond5_epsilon": "1/2"
}
)";

std::string replaced(std::string text, const std::string& from,
                     const std::string& to) {
  const std::size_t at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

TEST_CASE("config serialization is canonical and round trips") {
  const ConstructionConfig config = sample_config();
  const std::string text = serialize_config(config);
  CHECK(text == kCanonicalConfig);

  const ConstructionConfig parsed = parse_config(text);
  CHECK(parsed.m == config.m);
  CHECK(parsed.n == config.n);
  CHECK(parsed.initial_cube.origin == config.initial_cube.origin);
  CHECK(parsed.initial_cube.edge == config.initial_cube.edge);
  CHECK(parsed.gamma == config.gamma);
  CHECK(parsed.c == config.c);
  CHECK(parsed.R == config.R);
  CHECK(parsed.hyperplanes.empty());
  CHECK(parsed.regime == Regime::kEmpirical);
  CHECK(serialize_config(parsed) == text);
}

TEST_CASE("configs with hyperplanes and certified fields round trip") {
  ConstructionConfig config = sample_config();
  config.regime = Regime::kCertifiedParameters;
  config.c = make_rational(7, 200);
  config.node_budget = 12345;
  config.const_mn = make_rational(3, 2);
  config.cond5_const = Rational(10);
  config.cond5_epsilon = make_rational(2, 5);
  Hyperplane plane;
  plane.coefficients = RationalMatrix(1, 2);
  plane.coefficients.at(0, 0) = Rational(1);
  plane.coefficients.at(0, 1) = Rational(-1);
  plane.offset = make_rational(1, 7);
  config.hyperplanes.push_back(plane);

  const std::string text = serialize_config(config);
  const ConstructionConfig parsed = parse_config(text);
  CHECK(parsed.regime == Regime::kCertifiedParameters);
  CHECK(parsed.node_budget == 12345);
  CHECK(parsed.const_mn == make_rational(3, 2));
  CHECK(parsed.cond5_const == Rational(10));
  CHECK(parsed.cond5_epsilon == make_rational(2, 5));
  REQUIRE(parsed.hyperplanes.size() == 1);
  CHECK(parsed.hyperplanes[0].coefficients.entries ==
        plane.coefficients.entries);
  CHECK(parsed.hyperplanes[0].offset == plane.offset);
  CHECK(serialize_config(parsed) == text);
}

TEST_CASE("optional config keys default when absent") {
  const std::string minimal = R"({
  "m": 1,
  "n": 2,
  "edge": "1/2",
  "cube_origin": [["1/4", "1/4"]],
  "gamma": ["1/3"],
  "c": "1/100",
  "R": 4
}
)";
  const ConstructionConfig parsed = parse_config(minimal);
  CHECK(parsed.hyperplanes.empty());
  CHECK(parsed.regime == Regime::kEmpirical);
  CHECK(parsed.node_budget == 20'000'000);
  CHECK(parsed.const_mn == Rational(1));
  CHECK(parsed.cond5_const == Rational(1));
  CHECK(parsed.cond5_epsilon == make_rational(1, 2));
  // Re-serialization canonicalizes: whitespace and the defaults are added.
  CHECK(serialize_config(parsed) == kCanonicalConfig);
}

TEST_CASE("malformed configs are rejected with ParseError") {
  const std::string base = kCanonicalConfig;
  CHECK_NOTHROW(parse_config(base));

  CHECK_THROWS_AS(parse_config(replaced(base, "\"m\": 1", "\"m\": 1, \"zz\": 1")),
                  ParseError);
  CHECK_THROWS_AS(parse_config(replaced(base, "  \"c\": \"1/100\",\n", "")),
                  ParseError);
  CHECK_THROWS_AS(parse_config(replaced(base, "\"c\": \"1/100\"", "\"c\": 0.01")),
                  ParseError);
  CHECK_THROWS_AS(
      parse_config(replaced(base, "\"c\": \"1/100\"", "\"c\": \"2/4\"")),
      ParseError);
  CHECK_THROWS_AS(
      parse_config(replaced(base, "\"c\": \"1/100\"", "\"c\": \"3/0\"")),
      ParseError);
  CHECK_THROWS_AS(
      parse_config(replaced(base, "\"c\": \"1/100\"", "\"c\": \"0.01\"")),
      ParseError);
  CHECK_THROWS_AS(parse_config(replaced(base, "\"m\": 1", "\"m\": \"1\"")),
                  ParseError);
  CHECK_THROWS_AS(parse_config(replaced(base, "\"m\": 1", "\"m\": 0")),
                  ParseError);
  CHECK_THROWS_AS(
      parse_config(replaced(base, "\"regime\": \"empirical\"",
                            "\"regime\": \"speculative\"")),
      ParseError);
  CHECK_THROWS_AS(
      parse_config(replaced(base, "\"gamma\": [\n    \"1/3\"\n  ]",
                            "\"gamma\": [\"1/3\", \"0\"]")),
      ParseError);
  CHECK_THROWS_AS(
      parse_config(replaced(base, "\"1/4\",\n      \"1/4\"",
                            "\"1/4\",\n      \"1/4\",\n      \"1/4\"")),
      ParseError);
  CHECK_THROWS_AS(parse_config(base + "x"), ParseError);
  CHECK_THROWS_AS(parse_config("not json at all"), ParseError);
}

TEST_CASE("certificates round trip byte for byte") {
  Certificate cert;
  cert.config = sample_config();
  Hyperplane plane;
  plane.coefficients = RationalMatrix(1, 2);
  plane.coefficients.at(0, 0) = Rational(1);
  plane.coefficients.at(0, 1) = Rational(1);
  plane.offset = Rational(1);
  cert.config.hyperplanes.push_back(plane);
  cert.K = 2;
  cert.mode = SearchMode::kFullFrontier;
  cert.chain = {5, 3};
  cert.observed_removals = {10, 2};
  cert.witness = RationalMatrix(1, 2);
  cert.witness.at(0, 0) = make_rational(13, 32);
  cert.witness.at(0, 1) = make_rational(15, 32);
  cert.finite_range_bound = make_rational(1, 50);

  const std::string text = serialize_certificate(cert);
  const Certificate parsed = parse_certificate(text);
  CHECK(parsed.K == cert.K);
  CHECK(parsed.mode == cert.mode);
  CHECK(parsed.chain == cert.chain);
  CHECK(parsed.observed_removals == cert.observed_removals);
  CHECK(parsed.witness.entries == cert.witness.entries);
  CHECK(parsed.finite_range_bound == cert.finite_range_bound);
  CHECK(parsed.config.hyperplanes.size() == 1);
  CHECK(serialize_certificate(parsed) == text);
}

TEST_CASE("malformed certificates are rejected with ParseError") {
  Certificate cert;
  cert.config = sample_config();
  cert.K = 1;
  cert.chain = {5};
  cert.observed_removals = {10};
  cert.witness = RationalMatrix(1, 2);
  cert.witness.at(0, 0) = make_rational(3, 8);
  cert.witness.at(0, 1) = make_rational(3, 8);
  cert.finite_range_bound = make_rational(1, 50);
  const std::string base = serialize_certificate(cert);
  CHECK_NOTHROW(parse_certificate(base));

  CHECK_THROWS_AS(
      parse_certificate(replaced(base, "\"chain\": [\n    5\n  ]",
                                 "\"chain\": [-5]")),
      ParseError);
  CHECK_THROWS_AS(
      parse_certificate(replaced(base, "\"mode\": \"dfs\"",
                                 "\"mode\": \"bfs\"")),
      ParseError);
  CHECK_THROWS_AS(parse_certificate(replaced(base, "\"K\": 1", "\"K\": -1")),
                  ParseError);
  // Every certificate key is required; dropping one must fail.
  CHECK_THROWS_AS(
      parse_certificate(replaced(
          base, "  \"finite_range_bound\": \"1/50\"\n", "")),
      ParseError);
}

TEST_CASE("matrix files round trip with and without the shift") {
  MatrixFile with_gamma;
  with_gamma.matrix = RationalMatrix(2, 2);
  with_gamma.matrix.at(0, 0) = make_rational(1, 3);
  with_gamma.matrix.at(0, 1) = make_rational(-2, 7);
  with_gamma.matrix.at(1, 0) = Rational(0);
  with_gamma.matrix.at(1, 1) = make_rational(5, 4);
  with_gamma.gamma = {make_rational(1, 2), Rational(0)};

  const std::string text = serialize_matrix_file(with_gamma);
  const MatrixFile parsed = parse_matrix_file(text);
  CHECK(parsed.matrix.rows == 2);
  CHECK(parsed.matrix.cols == 2);
  CHECK(parsed.matrix.entries == with_gamma.matrix.entries);
  CHECK(parsed.gamma == with_gamma.gamma);
  CHECK(serialize_matrix_file(parsed) == text);

  MatrixFile plain = with_gamma;
  plain.gamma.clear();
  const std::string plain_text = serialize_matrix_file(plain);
  CHECK(plain_text.find("gamma") == std::string::npos);
  const MatrixFile plain_parsed = parse_matrix_file(plain_text);
  CHECK(plain_parsed.gamma.empty());
  CHECK(serialize_matrix_file(plain_parsed) == plain_text);
}

TEST_CASE("malformed matrix files are rejected with ParseError") {
  CHECK_THROWS_AS(parse_matrix_file("{\"entries\": []}\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix_file("{\"entries\": [[]]}\n"), ParseError);
  CHECK_THROWS_AS(
      parse_matrix_file("{\"entries\": [[\"1/2\"], [\"1/3\", \"1/4\"]]}\n"),
      ParseError);
  CHECK_THROWS_AS(
      parse_matrix_file(
          "{\"entries\": [[\"1/2\"]], \"gamma\": [\"0\", \"0\"]}\n"),
      ParseError);
  CHECK_THROWS_AS(
      parse_matrix_file("{\"entries\": [[\"1/2\"]], \"extra\": 1}\n"),
      ParseError);
  CHECK_THROWS_AS(parse_matrix_file("{\"entries\": [[\"0.5\"]]}\n"),
                  ParseError);
}

TEST_CASE("text file helpers report I/O failures") {
  CHECK_THROWS_AS(read_text_file("/nonexistent/definitely/missing.json"),
                  Error);
  CHECK_THROWS_AS(write_text_file("/nonexistent/definitely/missing.json", "x"),
                  Error);
}

}  // namespace
}  // namespace madmat
