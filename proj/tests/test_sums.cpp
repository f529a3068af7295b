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

#include "madmat/sums.hpp"

#include <doctest.h>

#include <string>
#include <vector>

namespace madmat {
namespace {

RationalMatrix row_matrix(const std::vector<Rational>& entries) {
  RationalMatrix a(1, static_cast<int>(entries.size()));
  a.entries = entries;
  return a;
}

SumSpec make_spec(const RationalMatrix& l, std::vector<long long> box,
                  const Rational& precision = Rational(0)) {
  SumSpec spec;
  spec.L = l;
  spec.Q = std::move(box);
  spec.precision = precision;
  return spec;
}

TEST_CASE("exact sums of reciprocal fractional parts") {
  const LogBounds tiny =
      sum_reciprocal_fractional(make_spec(row_matrix({make_rational(1, 2)}),
                                          {1}));
  CHECK(tiny.is_exact());
  CHECK(tiny.lower == Rational(4));

  const LogBounds quarter =
      sum_reciprocal_fractional(make_spec(row_matrix({make_rational(1, 4)}),
                                          {3}));
  CHECK(quarter.is_exact());
  CHECK(quarter.lower == Rational(20));

  // Monotone in the box radius (every term is positive).
  CHECK(sum_reciprocal_fractional(
            make_spec(row_matrix({make_rational(1, 4)}), {1}))
            .lower == Rational(8));
  CHECK(sum_reciprocal_fractional(
            make_spec(row_matrix({make_rational(1, 4)}), {2}))
            .lower == Rational(12));
}

TEST_CASE("a vanishing fractional part raises DivergentTerm") {
  bool thrown = false;
  try {
    sum_reciprocal_fractional(
        make_spec(row_matrix({make_rational(1, 2)}), {2}));
  } catch (const DivergentTerm& term) {
    thrown = true;
    CHECK(term.q() == IntVector{2});
    CHECK(term.row() == 0);
  }
  CHECK(thrown);
}

TEST_CASE("shell evaluation matches a direct full-box loop") {
  const RationalMatrix l =
      row_matrix({make_rational(1, 3), make_rational(1, 5)});
  const SumSpec spec = make_spec(l, {2, 3});

  Rational direct(0);
  for (long long q1 = -2; q1 <= 2; ++q1) {
    for (long long q2 = -3; q2 <= 3; ++q2) {
      if (q1 == 0 && q2 == 0) continue;
      const Rational value = static_cast<long>(q1) * l.at(0, 0) +
                             static_cast<long>(q2) * l.at(0, 1);
      direct += 1 / dist_nearest_int(value);
    }
  }

  const LogBounds exact = sum_reciprocal_fractional(spec);
  CHECK(exact.is_exact());
  CHECK(exact.lower == direct);

  // Dyadic mode brackets the exact value within the requested width.
  const Rational precision = make_rational(1, 1LL << 20);
  const LogBounds dyadic = sum_reciprocal_fractional(
      make_spec(l, {2, 3}, precision));
  CHECK(dyadic.width() <= precision);
  CHECK(dyadic.lower <= direct);
  CHECK(direct <= dyadic.upper);
}

TEST_CASE("sum specs are validated") {
  CHECK_THROWS_AS(sum_reciprocal_fractional(make_spec(RationalMatrix(), {1})),
                  PreconditionViolated);
  CHECK_THROWS_AS(
      sum_reciprocal_fractional(
          make_spec(row_matrix({make_rational(1, 2)}), {1, 1})),
      PreconditionViolated);
  CHECK_THROWS_AS(sum_reciprocal_fractional(
                      make_spec(row_matrix({make_rational(1, 2)}), {0})),
                  PreconditionViolated);
  CHECK_THROWS_AS(sum_reciprocal_fractional(
                      make_spec(row_matrix({make_rational(1, 2)}), {1},
                                Rational(-1))),
                  PreconditionViolated);
}

TEST_CASE("growth table reports bracketed ratios per box radius") {
  // Denominator 2048 keeps every fractional part positive for Q ≤ 16.
  const RationalMatrix l = row_matrix({make_rational(1021, 2048)});
  const std::vector<long long> q_list = {2, 4, 8, 16};
  const Rational precision = make_rational(1, 1LL << 20);

  const std::vector<GrowthRow> rows = growth_table(l, q_list, 1, 1, precision);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].Q == q_list[i]);
    CHECK(rows[i].S.width() <= precision);
    CHECK(rows[i].S.lower > Rational(0));
    CHECK(rows[i].ratio_log_m.lower > Rational(0));
    CHECK(rows[i].ratio_log_full.lower > Rational(0));
    // log*(Q) ≥ 1, so the fully corrected ratio can never exceed the raw one.
    CHECK(rows[i].ratio_log_full.lower <= rows[i].ratio_log_m.upper);
  }

  const std::string csv = growth_table_csv(rows);
  CHECK(csv.rfind("Q,S_lower,S_upper,ratio_logm_lower,ratio_logm_upper,"
                  "ratio_logfull_lower,ratio_logfull_upper\n",
                  0) == 0);
  CHECK(csv.find("\n2,") != std::string::npos);

  CHECK_THROWS_AS(growth_table(l, {1}, 1, 1, precision),
                  PreconditionViolated);
  CHECK_THROWS_AS(growth_table(l, {2}, 2, 1, precision),
                  PreconditionViolated);
}

TEST_CASE("semimultiplicative margin finds exact minima and zeros") {
  // ‖q/2‖ vanishes at even q: the margin is 0 and the least minimizer is −4.
  const MarginResult zero = semimult_margin(
      row_matrix({make_rational(1, 2)}), {PhiStep{4, Rational(1)}}, 4);
  CHECK(zero.margin == Rational(0));
  CHECK(zero.argmin == IntVector{-4});

  // A two-step φ reweights the shells: min(1/3·1, 4/3·2) stays at |q| = 1.
  const std::vector<PhiStep> phi = {PhiStep{1, Rational(1)},
                                    PhiStep{2, make_rational(1, 2)}};
  const MarginResult stepped =
      semimult_margin(row_matrix({make_rational(1, 3)}), phi, 2);
  CHECK(stepped.margin == make_rational(1, 3));
  CHECK(stepped.argmin == IntVector{-1});

  // Scaling φ down by 2 scales every margin up by 2.
  const std::vector<PhiStep> halved = {PhiStep{1, make_rational(1, 2)},
                                       PhiStep{2, make_rational(1, 4)}};
  const MarginResult doubled =
      semimult_margin(row_matrix({make_rational(1, 3)}), halved, 2);
  CHECK(doubled.margin == stepped.margin * 2);
  CHECK(doubled.argmin == stepped.argmin);

  const RationalMatrix l = row_matrix({make_rational(1, 3)});
  CHECK_THROWS_AS(semimult_margin(l, {}, 2), PreconditionViolated);
  CHECK_THROWS_AS(semimult_margin(l, {PhiStep{1, Rational(0)}}, 2),
                  PreconditionViolated);
  CHECK_THROWS_AS(
      semimult_margin(
          l, {PhiStep{1, make_rational(1, 2)}, PhiStep{2, Rational(1)}}, 2),
      PreconditionViolated);
  CHECK_THROWS_AS(
      semimult_margin(l, {PhiStep{2, Rational(1)}, PhiStep{2, Rational(1)}},
                      2),
      PreconditionViolated);
  CHECK_THROWS_AS(semimult_margin(l, {PhiStep{1, Rational(1)}}, 0),
                  PreconditionViolated);
}

}  // namespace
}  // namespace madmat
