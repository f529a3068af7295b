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

#include "madmat/certified.hpp"

#include <mutex>
#include <utility>

namespace madmat {

namespace {

constexpr int kMaxSeriesTerms = 100000;
constexpr int kMaxRefinements = 400;

// sign(x − 2^j) without materializing huge powers on both sides.
int cmp_pow2(const Rational& x, long j) {
  Integer lhs = x.get_num();
  Integer rhs = x.get_den();
  if (j >= 0) {
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(),
                 static_cast<unsigned long>(j));
  } else {
    mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(),
                 static_cast<unsigned long>(-j));
  }
  return cmp(lhs, rhs);
}

// Enclosure of 2·atanh(t) = 2·Σ t^(2j+1)/(2j+1) for rational t ∈ [0, 1/2].
// Width ≤ precision.  This equals log((1+t)/(1−t)).
LogBounds atanh_series(const Rational& t, const Rational& precision) {
  if (sgn(t) == 0) return LogBounds::exact(Rational(0));
  const Rational t2 = t * t;
  const Rational geometric = 1 / (1 - t2);  // Σ t^(2i) over i ≥ 0
  Rational sum = 0;
  Rational power = t;  // t^(2j+1)
  for (int j = 0; j < kMaxSeriesTerms; ++j) {
    sum += power / (2 * j + 1);
    power *= t2;
    // Tail after term j is at most power/(2j+3)·geometric.
    const Rational tail = power / (2 * j + 3) * geometric;
    if (2 * tail <= precision) {
      return LogBounds(2 * sum, 2 * (sum + tail), precision);
    }
  }
  throw Error("atanh series did not converge within the term budget");
}

struct CachedConstant {
  std::mutex mutex;
  LogBounds best;
  bool has_value = false;
};

LogBounds cached_or_compute(CachedConstant& cache, const Rational& precision,
                            LogBounds (*compute)(const Rational&)) {
  std::lock_guard<std::mutex> lock(cache.mutex);
  if (cache.has_value && cache.best.width() <= precision) {
    return LogBounds(cache.best.lower, cache.best.upper, precision);
  }
  cache.best = compute(precision);
  cache.has_value = true;
  return cache.best;
}

LogBounds compute_log2(const Rational& precision) {
  // log 2 = 2·atanh(1/3).
  return atanh_series(make_rational(1, 3), precision);
}

LogBounds compute_e(const Rational& precision) {
  Rational sum = 1;       // j = 0 term
  Rational factorial = 1;  // j!
  for (int j = 1; j < kMaxSeriesTerms; ++j) {
    factorial *= j;
    sum += 1 / factorial;
    // Σ_{i>j} 1/i! < 2/(j+1)!.
    const Rational tail = 2 / (factorial * (j + 1));
    if (tail <= precision) return LogBounds(sum, sum + tail, precision);
  }
  throw Error("e series did not converge within the term budget");
}

}  // namespace

long floor_log2(const Rational& x) {
  if (sgn(x) <= 0) throw NonPositiveInput("floor_log2 of non-positive input");
  long e = static_cast<long>(
               mpz_sizeinbase(x.get_num().get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(x.get_den().get_mpz_t(), 2));
  while (cmp_pow2(x, e) < 0) --e;
  while (cmp_pow2(x, e + 1) >= 0) ++e;
  return e;
}

LogBounds log2_bounds(const Rational& precision) {
  if (sgn(precision) <= 0) {
    throw PreconditionViolated("non-positive precision");
  }
  static CachedConstant cache;
  return cached_or_compute(cache, precision, compute_log2);
}

LogBounds e_bounds(const Rational& precision) {
  if (sgn(precision) <= 0) {
    throw PreconditionViolated("non-positive precision");
  }
  static CachedConstant cache;
  return cached_or_compute(cache, precision, compute_e);
}

LogBounds log_bounds(const Rational& x, const Rational& precision) {
  if (sgn(x) <= 0) throw NonPositiveInput("log of non-positive input");
  if (sgn(precision) <= 0) {
    throw PreconditionViolated("non-positive precision");
  }
  const long k = floor_log2(x);
  // x = 2^k·y with y ∈ [1, 2): log x = k·log 2 + 2·atanh((y−1)/(y+1)).
  Rational y = x;
  if (k > 0) {
    y /= rational_pow_int(Rational(2), k);
  } else if (k < 0) {
    y *= rational_pow_int(Rational(2), -k);
  }
  const Rational t = (y - 1) / (y + 1);
  if (k == 0) return atanh_series(t, precision);
  const long ka = k > 0 ? k : -k;
  const LogBounds l2 = log2_bounds(precision / (2 * (ka + 1)));
  const LogBounds ly = atanh_series(t, precision / 2);
  LogBounds result = bounds_add(bounds_scale(Rational(k), l2), ly);
  result.precision = precision;
  return result;
}

int compare_with_e(const Rational& x) {
  if (x <= 2) return -1;
  if (x >= 3) return 1;
  Rational precision = make_rational(1, 8);
  for (int i = 0; i < kMaxRefinements; ++i) {
    const LogBounds e = e_bounds(precision);
    const int cmp_result = bounds_compare(e, x);
    if (cmp_result < 0) return 1;   // e < x
    if (cmp_result > 0) return -1;  // e > x
    precision /= 8;
  }
  throw Error("comparison with e failed to separate (rational equal to e?)");
}

LogBounds log_star_bounds(const Rational& x, const Rational& precision) {
  if (sgn(x) <= 0) throw NonPositiveInput("log* of non-positive input");
  if (compare_with_e(x) <= 0) {
    LogBounds one = LogBounds::exact(Rational(1));
    one.precision = precision;
    return one;
  }
  LogBounds lb = log_bounds(x, precision);
  if (lb.lower < 1) lb.lower = 1;  // true value ≥ 1 since x > e
  return lb;
}

LogBounds root_bounds(const Rational& x, unsigned long degree,
                      const Rational& precision) {
  if (degree == 0) throw PreconditionViolated("zeroth root");
  if (sgn(x) < 0) throw NonPositiveInput("root of negative input");
  if (sgn(precision) <= 0) {
    throw PreconditionViolated("non-positive precision");
  }
  if (sgn(x) == 0) return LogBounds::exact(Rational(0));
  if (degree == 1) return LogBounds::exact(x);
  // x^(1/d) = (num·den^(d−1))^(1/d) / den, reducing to one integer root.
  Integer scaled;
  mpz_pow_ui(scaled.get_mpz_t(), x.get_den().get_mpz_t(), degree - 1);
  scaled *= x.get_num();
  Integer r;
  const int exact = mpz_root(r.get_mpz_t(), scaled.get_mpz_t(), degree);
  if (exact != 0) {
    LogBounds root = LogBounds::exact(make_rational(r, x.get_den()));
    root.precision = precision;
    return root;
  }
  Rational lo = make_rational(r, x.get_den());
  Rational hi = make_rational(r + 1, x.get_den());
  while (hi - lo > precision) {
    const Rational mid = (lo + hi) / 2;
    if (rational_pow_int(mid, static_cast<long>(degree)) <= x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return LogBounds(lo, hi, precision);
}

LogBounds rational_pow_bounds(const Rational& x, const Rational& t,
                              const Rational& precision) {
  if (sgn(x) <= 0) throw NonPositiveInput("rational power of non-positive base");
  if (sgn(t) == 0) {
    LogBounds one = LogBounds::exact(Rational(1));
    one.precision = precision;
    return one;
  }
  const long num = to_long_long_checked(t.get_num(), "power numerator");
  const unsigned long den =
      static_cast<unsigned long>(to_long_long_checked(t.get_den(),
                                                      "power denominator"));
  return root_bounds(rational_pow_int(x, num), den, precision);
}

LogBounds pow_bounds_of_enclosure(const LogBounds& base, const Rational& t,
                                  const Rational& precision) {
  if (sgn(base.lower) <= 0) {
    throw NonPositiveInput("rational power of non-positive enclosure");
  }
  const LogBounds at_lower = rational_pow_bounds(base.lower, t, precision / 2);
  const LogBounds at_upper = rational_pow_bounds(base.upper, t, precision / 2);
  // Hull over the whole base range: the result is wider than `precision`
  // whenever the base enclosure itself is wide, so report the true width.
  if (sgn(t) >= 0) {
    return LogBounds(at_lower.lower, at_upper.upper);
  }
  return LogBounds(at_upper.lower, at_lower.upper);
}

LogBounds log_star_pow_bounds(const Rational& x, const Rational& t,
                              const Rational& precision) {
  if (sgn(x) <= 0) throw NonPositiveInput("log* of non-positive power base");
  if (sgn(precision) <= 0) {
    throw PreconditionViolated("precision must be positive");
  }
  if (sgn(t) == 0) return LogBounds::exact(Rational(1));
  const Rational scale = abs(t);
  const LogBounds raw =
      bounds_scale(t, log_bounds(x, precision / scale));
  if (raw.lower >= 1) return raw;
  if (raw.upper <= 1) return LogBounds::exact(Rational(1));
  return LogBounds(Rational(1), raw.upper);
}

}  // namespace madmat
