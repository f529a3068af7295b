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

#include "madmat/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "madmat/certified.hpp"

namespace madmat {

namespace {

// Width used for the one-time log* enclosure inside ε̄; only the lower
// endpoint is consumed, and only to round ε upward deterministically.
const long kEpsilonPrecisionBits = 64;

// Exact interval of X_i·q + γ_i over a cube, as [lo, hi].
std::pair<Rational, Rational> row_interval(const Cube& J, int i,
                                           const IntVector& q,
                                           const std::vector<Rational>& gamma) {
  Rational lo = gamma.empty() ? Rational(0) : gamma[i];
  Rational hi = lo;
  for (int j = 0; j < J.cols; ++j) {
    const long long qj = q[j];
    if (qj == 0) continue;
    if (qj > 0) {
      lo += J.lo(i, j) * static_cast<long>(qj);
      hi += J.hi(i, j) * static_cast<long>(qj);
    } else {
      lo += J.hi(i, j) * static_cast<long>(qj);
      hi += J.lo(i, j) * static_cast<long>(qj);
    }
  }
  return {lo, hi};
}

long long gcd_ll(long long a, long long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Cube::Cube(int m, int n, std::vector<Rational> origin_entries, Rational edge_len)
    : rows(m), cols(n), origin(std::move(origin_entries)), edge(std::move(edge_len)) {
  if (rows < 1 || cols < 1 ||
      origin.size() != static_cast<std::size_t>(rows) * cols) {
    throw PreconditionViolated("cube dimensions do not match origin entries");
  }
  if (sgn(edge) <= 0) throw PreconditionViolated("cube edge must be positive");
}

long long Cube::child_count(long long R, int rows, int cols) {
  Integer count;
  mpz_ui_pow_ui(count.get_mpz_t(), static_cast<unsigned long>(R),
                static_cast<unsigned long>(rows) * cols);
  return to_long_long_checked(count, "cube child count");
}

Cube Cube::child(long long R, long long index) const {
  const int l = rows * cols;
  const Rational child_edge = edge / Rational(static_cast<long>(R));
  std::vector<Rational> child_origin(origin);
  // Most significant digit first = entry (0,0): peel digits from the end.
  for (int t = l - 1; t >= 0; --t) {
    const long long digit = index % R;
    index /= R;
    child_origin[t] += child_edge * Rational(static_cast<long>(digit));
  }
  if (index != 0) throw PreconditionViolated("child index out of range");
  return Cube(rows, cols, std::move(child_origin), child_edge);
}

RationalMatrix Cube::center() const {
  RationalMatrix c(rows, cols);
  const Rational half_edge = edge / 2;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      c.at(i, j) = lo(i, j) + half_edge;
    }
  }
  return c;
}

bool Cube::contains(const RationalMatrix& point) const {
  if (point.rows != rows || point.cols != cols) return false;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (point.at(i, j) < lo(i, j) || point.at(i, j) > hi(i, j)) return false;
    }
  }
  return true;
}

std::vector<IntVector> enumerate_band(int n, long long R, int k) {
  if (R < 2) throw PreconditionViolated("band enumeration requires R >= 2");
  if (k < 0) throw PreconditionViolated("negative band index");
  Integer r_pow_k, r_pow_k1;
  mpz_ui_pow_ui(r_pow_k.get_mpz_t(), static_cast<unsigned long>(R),
                static_cast<unsigned long>(k));
  r_pow_k1 = r_pow_k * static_cast<long>(R);
  // Heights v admitted by the band satisfy R^k ≤ v³ < R^(k+1).
  Integer max_height;
  mpz_root(max_height.get_mpz_t(), Integer(r_pow_k1 - 1).get_mpz_t(), 3);
  const long long height_cap = to_long_long_checked(max_height, "band height");

  std::vector<IntVector> band;
  for_each_with_prod_bound(n, height_cap, [&](const IntVector& q) {
    Integer cube_of_height;
    mpz_ui_pow_ui(cube_of_height.get_mpz_t(),
                  static_cast<unsigned long>(prod_plus(q)), 3);
    if (cube_of_height >= r_pow_k) band.push_back(q);
  });
  return band;
}

long long band_height_limit(long long R, int K) {
  if (K <= 0) return 0;
  Integer r_pow_K;
  mpz_ui_pow_ui(r_pow_K.get_mpz_t(), static_cast<unsigned long>(R),
                static_cast<unsigned long>(K));
  Integer limit;
  mpz_root(limit.get_mpz_t(), Integer(r_pow_K - 1).get_mpz_t(), 3);
  return to_long_long_checked(limit, "band height limit");
}

Rational epsilon_upper(const Rational& c, long long height, int exponent) {
  if (height < 1) throw PreconditionViolated("height must be >= 1");
  const Rational h(static_cast<long>(height));
  if (height <= 2) return c / h;  // log*(height) = 1 exactly
  const Rational precision =
      make_rational(1, 1) / rational_pow_int(Rational(2), kEpsilonPrecisionBits);
  const LogBounds star = log_star_bounds(h, precision);
  // ε = c/(v·log*(v)^e) ≤ c/(v·lower^e) since lower ≤ log*(v) and lower ≥ 1.
  return c / (h * rational_pow_int(star.lower, exponent));
}

std::vector<DangerPoint> candidate_points(const Cube& J, const IntVector& q,
                                          const std::vector<Rational>& gamma) {
  if (is_zero_vector(q)) {
    throw PreconditionViolated("candidate_points requires q != 0");
  }
  const Rational half = make_rational(1, 2);
  std::vector<long long> p_lo(J.rows), p_hi(J.rows);
  for (int i = 0; i < J.rows; ++i) {
    const auto [w_lo, w_hi] = row_interval(J, i, q, gamma);
    // p_i must bring W + p_i into contact with [−1/2, 1/2].
    p_lo[i] = to_long_long_checked(rational_ceil(-half - w_hi), "p range");
    p_hi[i] = to_long_long_checked(rational_floor(half - w_lo), "p range");
  }
  long long q_gcd = 0;
  for (long long v : q) q_gcd = gcd_ll(q_gcd, v);

  std::vector<DangerPoint> points;
  IntVector p(J.rows, 0);
  // Odometer over the per-row ranges, lexicographic on p.
  int row = 0;
  for (int i = 0; i < J.rows; ++i) {
    if (p_lo[i] > p_hi[i]) return points;  // some row admits no shift
    p[i] = p_lo[i];
  }
  while (true) {
    long long g = q_gcd;
    for (long long v : p) g = gcd_ll(g, v);
    if (g == 1) points.push_back(DangerPoint{p, q});
    row = J.rows - 1;
    while (row >= 0 && p[row] == p_hi[row]) {
      p[row] = p_lo[row];
      --row;
    }
    if (row < 0) break;
    ++p[row];
  }
  return points;
}

bool cube_meets_danger(const Cube& I, const DangerPoint& P,
                       const std::vector<Rational>& gamma,
                       const Rational& eps_upper) {
  const Rational half = make_rational(1, 2);
  Rational min_product = 1;
  for (int i = 0; i < I.rows; ++i) {
    auto [lo, hi] = row_interval(I, i, P.q, gamma);
    lo += static_cast<long>(P.p[i]);
    hi += static_cast<long>(P.p[i]);
    // Clip the row value interval to [−1/2, 1/2].
    if (lo < -half) lo = -half;
    if (hi > half) hi = half;
    if (lo > hi) return false;  // this row never meets the unit window
    if (sgn(lo) <= 0 && sgn(hi) >= 0) {
      min_product = 0;  // the row minimum is exactly 0
      continue;
    }
    const Rational abs_lo = abs(lo);
    const Rational abs_hi = abs(hi);
    min_product *= abs_lo < abs_hi ? abs_lo : abs_hi;
  }
  return min_product <= eps_upper;
}

bool cube_meets_hyperplane(const Cube& I, const Hyperplane& H) {
  Rational lo = 0;
  Rational hi = 0;
  for (int i = 0; i < I.rows; ++i) {
    for (int j = 0; j < I.cols; ++j) {
      const Rational& coeff = H.coefficients.at(i, j);
      if (sgn(coeff) > 0) {
        lo += coeff * I.lo(i, j);
        hi += coeff * I.hi(i, j);
      } else if (sgn(coeff) < 0) {
        lo += coeff * I.hi(i, j);
        hi += coeff * I.lo(i, j);
      }
    }
  }
  return lo <= H.offset && H.offset <= hi;
}

Rational hyperplane_form_at(const Hyperplane& H, const RationalMatrix& X) {
  Rational sum = 0;
  for (int i = 0; i < X.rows; ++i) {
    for (int j = 0; j < X.cols; ++j) {
      sum += H.coefficients.at(i, j) * X.at(i, j);
    }
  }
  return sum;
}

}  // namespace madmat
