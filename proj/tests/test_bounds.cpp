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

#include "madmat/bounds.hpp"

#include <doctest.h>

#include <random>

#include "madmat/rational.hpp"

namespace madmat {
namespace {

Rational small_rational(std::mt19937_64& rng) {
  const long long num = static_cast<long long>(rng() % 41) - 20;
  const long long den = 1 + static_cast<long long>(rng() % 12);
  return make_rational(num, den);
}

// A random point inside the enclosure (midpoint biased by thirds).
Rational point_inside(const LogBounds& a, std::mt19937_64& rng) {
  const long long t = static_cast<long long>(rng() % 5);
  return a.lower + (a.upper - a.lower) * make_rational(t, 4);
}

TEST_CASE("constructors and accessors") {
  const LogBounds unit(Rational(0), Rational(1));
  CHECK(unit.width() == 1);
  CHECK(unit.contains(make_rational(1, 2)));
  CHECK(unit.contains(Rational(0)));
  CHECK(unit.contains(Rational(1)));
  CHECK_FALSE(unit.contains(Rational(2)));
  CHECK_FALSE(unit.is_exact());

  const LogBounds point = LogBounds::exact(make_rational(3, 7));
  CHECK(point.is_exact());
  CHECK(point.width() == 0);
  CHECK(point.lower == point.upper);

  CHECK_THROWS_AS(LogBounds(Rational(2), Rational(1)), PreconditionViolated);
  CHECK_THROWS_AS(LogBounds(Rational(2), Rational(1), Rational(1)),
                  PreconditionViolated);
}

TEST_CASE("interval arithmetic on hand cases") {
  const LogBounds a(make_rational(1, 2), Rational(2));
  const LogBounds b(Rational(-1), Rational(3));

  const LogBounds sum = bounds_add(a, b);
  CHECK(sum.lower == make_rational(-1, 2));
  CHECK(sum.upper == Rational(5));

  const LogBounds diff = bounds_sub(a, b);
  CHECK(diff.lower == make_rational(1, 2) - Rational(3));
  CHECK(diff.upper == Rational(3));

  const LogBounds prod = bounds_mul(a, b);  // spans of mixed signs
  CHECK(prod.lower == Rational(-2));
  CHECK(prod.upper == Rational(6));

  const LogBounds neg = bounds_scale(Rational(-2), a);
  CHECK(neg.lower == Rational(-4));
  CHECK(neg.upper == Rational(-1));

  const LogBounds rec = bounds_reciprocal(a);
  CHECK(rec.lower == make_rational(1, 2));
  CHECK(rec.upper == Rational(2));

  const LogBounds cube = bounds_pow_int(a, 3);
  CHECK(cube.lower == make_rational(1, 8));
  CHECK(cube.upper == Rational(8));

  const LogBounds invsq = bounds_pow_int(a, -2);
  CHECK(invsq.lower == make_rational(1, 4));
  CHECK(invsq.upper == Rational(4));

  CHECK(bounds_pow_int(b, 0).is_exact());
  CHECK(bounds_pow_int(b, 0).lower == Rational(1));
}

TEST_CASE("preconditions of reciprocal and power") {
  const LogBounds touching_zero(Rational(0), Rational(1));
  const LogBounds mixed(Rational(-1), Rational(1));
  CHECK_THROWS_AS(bounds_reciprocal(touching_zero), PreconditionViolated);
  CHECK_THROWS_AS(bounds_reciprocal(mixed), PreconditionViolated);
  CHECK_THROWS_AS(bounds_pow_int(mixed, 2), PreconditionViolated);
  CHECK_THROWS_AS(bounds_pow_int(touching_zero, -1), PreconditionViolated);
}

TEST_CASE("bounds_compare") {
  const LogBounds a(Rational(1), Rational(2));
  CHECK(bounds_compare(a, Rational(3)) == -1);
  CHECK(bounds_compare(a, Rational(0)) == 1);
  CHECK(bounds_compare(a, make_rational(3, 2)) == 0);
  CHECK(bounds_compare(a, Rational(1)) == 0);  // touching is undecided
  CHECK(bounds_compare(a, Rational(2)) == 0);
}

TEST_CASE("operations preserve membership (randomized)") {
  std::mt19937_64 rng(20260815);
  for (int trial = 0; trial < 300; ++trial) {
    Rational a_lo = small_rational(rng);
    Rational a_hi = small_rational(rng);
    if (a_lo > a_hi) std::swap(a_lo, a_hi);
    Rational b_lo = small_rational(rng);
    Rational b_hi = small_rational(rng);
    if (b_lo > b_hi) std::swap(b_lo, b_hi);
    const LogBounds a(a_lo, a_hi);
    const LogBounds b(b_lo, b_hi);
    const Rational x = point_inside(a, rng);
    const Rational y = point_inside(b, rng);

    CHECK(bounds_add(a, b).contains(x + y));
    CHECK(bounds_sub(a, b).contains(x - y));
    CHECK(bounds_mul(a, b).contains(x * y));
    const Rational c = small_rational(rng);
    CHECK(bounds_scale(c, a).contains(c * x));
    if (sgn(a.lower) > 0) {
      CHECK(bounds_reciprocal(a).contains(1 / x));
      CHECK(bounds_pow_int(a, 3).contains(rational_pow_int(x, 3)));
      CHECK(bounds_pow_int(a, -2).contains(rational_pow_int(x, -2)));
    }
    if (sgn(a.lower) >= 0) {
      CHECK(bounds_pow_int(a, 2).contains(x * x));
    }
  }
}

}  // namespace
}  // namespace madmat
