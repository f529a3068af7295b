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

#ifndef MADMAT_CERTIFIED_HPP_
#define MADMAT_CERTIFIED_HPP_

// Certified enclosures of logarithms, e, real roots and rational powers.
//
// Nothing here trusts a floating-point unit or an external math library.
// Natural logarithms are computed by argument reduction x = 2^k·y with
// y ∈ [1,2), followed by the series
//
//   log y = 2·(t + t³/3 + t⁵/5 + ...),   t = (y−1)/(y+1) ∈ [0, 1/3),
//
// whose tail after the t^(2N+1) term is at most t^(2N+3)/((2N+3)(1−t²))·2,
// an explicit rational that is added to the upper endpoint only.  log 2 uses
// the same series at t = 1/3; e uses partial sums of Σ 1/j! with tail bound
// 2/(N+1)!.  Roots are isolated by exact integer k-th roots plus bisection
// with exact comparisons, so x^(1/d) is detected exactly when it is rational.

#include "madmat/bounds.hpp"
#include "madmat/rational.hpp"

namespace madmat {

// x ≤ 0 where a positive value is required.
class NonPositiveInput : public Error {
 public:
  explicit NonPositiveInput(const std::string& what) : Error(what) {}
};

// Exact ⌊log₂ x⌋ for x > 0.
long floor_log2(const Rational& x);

// Enclosure of log 2 with width ≤ precision (cached across calls).
LogBounds log2_bounds(const Rational& precision);

// Enclosure of e with width ≤ precision (cached across calls).
LogBounds e_bounds(const Rational& precision);

// Enclosure of log x for x > 0 with width ≤ precision.
LogBounds log_bounds(const Rational& x, const Rational& precision);

// Certified comparison of a rational with e; returns −1 (x < e) or +1
// (x > e).  Terminates because e is irrational.
int compare_with_e(const Rational& x);

// Enclosure of log*(x) = log(max{e, x}) with width ≤ precision; returns the
// exact value 1 when the certified comparison shows x ≤ e.  Both endpoints
// are ≥ 1 − precision, and the lower endpoint is clamped to ≥ 1.
LogBounds log_star_bounds(const Rational& x, const Rational& precision);

// Enclosure of x^(1/degree) for x ≥ 0, degree ≥ 1, width ≤ precision;
// exact when the root is rational.
LogBounds root_bounds(const Rational& x, unsigned long degree,
                      const Rational& precision);

// Enclosure of x^t for x > 0 and rational t, width ≤ precision; computed as
// (x^num(t))^(1/den(t)), exact when that root is rational.
LogBounds rational_pow_bounds(const Rational& x, const Rational& t,
                              const Rational& precision);

// Enclosure of b^t over all b in a positive enclosure (monotone hull).
LogBounds pow_bounds_of_enclosure(const LogBounds& base, const Rational& t,
                                  const Rational& precision);

// Enclosure of log*(x^t) = max{1, t·log x} for x > 0; exact 1 when the
// certified scaled logarithm stays at or below 1.  Width ≤ precision.
LogBounds log_star_pow_bounds(const Rational& x, const Rational& t,
                              const Rational& precision);

}  // namespace madmat

#endif  // MADMAT_CERTIFIED_HPP_
