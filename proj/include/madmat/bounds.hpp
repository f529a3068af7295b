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

#ifndef MADMAT_BOUNDS_HPP_
#define MADMAT_BOUNDS_HPP_

// Two-sided certified enclosures of real numbers.
//
// A LogBounds value asserts lower ≤ x ≤ upper for some real x, with both
// endpoints exact rationals.  All transcendental quantities (logarithms, e,
// real roots and powers) flow through this type so that every downstream
// comparison can be made on a stated safe side.  The `precision` field records
// the width that was requested when the enclosure was produced; the invariant
// upper − lower ≤ precision holds whenever precision > 0 was requested.

#include "madmat/rational.hpp"

namespace madmat {

struct LogBounds {
  Rational lower;
  Rational upper;
  Rational precision;  // requested width; defaults to the actual width

  LogBounds() : lower(0), upper(0), precision(0) {}
  LogBounds(Rational lo, Rational hi);
  LogBounds(Rational lo, Rational hi, Rational prec);

  // Exact enclosure [x, x].
  static LogBounds exact(const Rational& x) { return LogBounds(x, x); }

  Rational width() const { return upper - lower; }
  bool contains(const Rational& x) const { return lower <= x && x <= upper; }
  bool is_exact() const { return lower == upper; }
};

// Directed interval arithmetic.  Addition/subtraction/multiplication are
// exact on the endpoints; the result encloses every pointwise combination.
LogBounds bounds_add(const LogBounds& a, const LogBounds& b);
LogBounds bounds_sub(const LogBounds& a, const LogBounds& b);
LogBounds bounds_mul(const LogBounds& a, const LogBounds& b);
LogBounds bounds_scale(const Rational& c, const LogBounds& a);
// Requires 0 < a.lower (interval strictly positive).
LogBounds bounds_reciprocal(const LogBounds& a);
// Integer power; requires a.lower ≥ 0 when e ≥ 0, a.lower > 0 when e < 0.
LogBounds bounds_pow_int(const LogBounds& a, long e);

// Tri-valued certified comparison of the enclosed value against a rational:
// −1 when upper < x, +1 when lower > x, 0 when x lies inside the enclosure
// (undecided at this width).
int bounds_compare(const LogBounds& a, const Rational& x);

}  // namespace madmat

#endif  // MADMAT_BOUNDS_HPP_
