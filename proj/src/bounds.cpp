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

#include <algorithm>

namespace madmat {

LogBounds::LogBounds(Rational lo, Rational hi)
    : lower(std::move(lo)), upper(std::move(hi)), precision(upper - lower) {
  if (lower > upper) {
    throw PreconditionViolated("bounds with lower > upper");
  }
}

LogBounds::LogBounds(Rational lo, Rational hi, Rational prec)
    : lower(std::move(lo)), upper(std::move(hi)), precision(std::move(prec)) {
  if (lower > upper) {
    throw PreconditionViolated("bounds with lower > upper");
  }
}

LogBounds bounds_add(const LogBounds& a, const LogBounds& b) {
  return LogBounds(a.lower + b.lower, a.upper + b.upper);
}

LogBounds bounds_sub(const LogBounds& a, const LogBounds& b) {
  return LogBounds(a.lower - b.upper, a.upper - b.lower);
}

LogBounds bounds_mul(const LogBounds& a, const LogBounds& b) {
  const Rational p1 = a.lower * b.lower;
  const Rational p2 = a.lower * b.upper;
  const Rational p3 = a.upper * b.lower;
  const Rational p4 = a.upper * b.upper;
  return LogBounds(std::min(std::min(p1, p2), std::min(p3, p4)),
                   std::max(std::max(p1, p2), std::max(p3, p4)));
}

LogBounds bounds_scale(const Rational& c, const LogBounds& a) {
  if (sgn(c) >= 0) return LogBounds(c * a.lower, c * a.upper);
  return LogBounds(c * a.upper, c * a.lower);
}

LogBounds bounds_reciprocal(const LogBounds& a) {
  if (sgn(a.lower) <= 0) {
    throw PreconditionViolated("reciprocal of a non-positive enclosure");
  }
  return LogBounds(1 / a.upper, 1 / a.lower);
}

LogBounds bounds_pow_int(const LogBounds& a, long e) {
  if (e == 0) return LogBounds::exact(Rational(1));
  if (e < 0) return bounds_reciprocal(bounds_pow_int(a, -e));
  if (sgn(a.lower) < 0) {
    throw PreconditionViolated("integer power of a sign-mixed enclosure");
  }
  return LogBounds(rational_pow_int(a.lower, e), rational_pow_int(a.upper, e));
}

int bounds_compare(const LogBounds& a, const Rational& x) {
  if (a.upper < x) return -1;
  if (a.lower > x) return 1;
  return 0;
}

}  // namespace madmat
