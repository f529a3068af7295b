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

#include "madmat/counting.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <utility>

#include "madmat/certified.hpp"
#include "madmat/diophantine.hpp"

namespace madmat {

namespace {

constexpr long long kMaxTiles = 10'000'000;
constexpr int kMaxRefinements = 400;
constexpr int kMaxBandIndex = 12;

Rational rat(long long v) { return Rational(static_cast<long>(v)); }

// Closed interval of the values q_j·x over x in [x_lo, x_hi].
std::pair<Rational, Rational> scaled_interval(long long q_j,
                                              const Rational& x_lo,
                                              const Rational& x_hi) {
  const Rational factor = rat(q_j);
  Rational a = factor * x_lo;
  Rational b = factor * x_hi;
  if (q_j < 0) std::swap(a, b);
  return {a, b};
}

std::string join_ints(const IntVector& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != 0) out << ';';
    out << v[i];
  }
  return out.str();
}

long long pick_in(std::mt19937_64& rng, long long lo, long long hi) {
  const auto span = static_cast<unsigned long long>(hi - lo + 1);
  return lo + static_cast<long long>(rng() % span);
}

IntVector random_nonzero_vector(std::mt19937_64& rng, int n, long long bound) {
  IntVector q(n);
  do {
    for (auto& entry : q) entry = pick_in(rng, -bound, bound);
  } while (is_zero_vector(q));
  return q;
}

}  // namespace

void validate_hypercount_instance(const HypercountInstance& inst) {
  if (inst.m < 1 || inst.n < 1)
    throw PreconditionViolated("hypercount needs m >= 1 and n >= 1");
  if (inst.gamma_prime.size() != static_cast<std::size_t>(inst.m))
    throw PreconditionViolated("gamma_prime must have one entry per row");
  if (inst.q.size() != static_cast<std::size_t>(inst.n) ||
      is_zero_vector(inst.q))
    throw PreconditionViolated("q must be a nonzero vector of length n");
  if (sgn(inst.epsilon) <= 0)
    throw PreconditionViolated("epsilon must be positive");
  if (sgn(inst.T) <= 0) throw PreconditionViolated("T must be positive");
  if (sgn(inst.delta) <= 0)
    throw PreconditionViolated("tile pitch delta must be positive");
  if (inst.V.rows != inst.m || inst.V.cols != inst.n)
    throw PreconditionViolated("offset grid V must be m x n");
  if (inst.D.rows != inst.m || inst.D.cols != inst.n || sgn(inst.D.edge) <= 0)
    throw PreconditionViolated("domain cube D must be m x n with edge > 0");
  // The bound is only claimed in the regime epsilon/T^m < 1/e; certify the
  // strict inequality exactly before counting anything against it.
  const Rational ratio = rational_pow_int(inst.T, inst.m) / inst.epsilon;
  if (compare_with_e(ratio) != 1)
    throw PreconditionViolated("hypercount requires epsilon/T^m < 1/e");
}

long long brute_tile_count(const HypercountInstance& inst) {
  validate_hypercount_instance(inst);
  const int coords = inst.m * inst.n;

  // Tile index range per coordinate: closed tile [V+aδ, V+(a+1)δ] meets the
  // closed cube slab iff ceil((lo−V−δ)/δ) ≤ a ≤ floor((hi−V)/δ).
  std::vector<std::vector<std::pair<Rational, Rational>>> contribution(coords);
  Integer total = 1;
  for (int i = 0; i < inst.m; ++i) {
    for (int j = 0; j < inst.n; ++j) {
      const int idx = i * inst.n + j;
      const Rational& lo = inst.D.lo(i, j);
      const Rational hi = inst.D.hi(i, j);
      const Rational& v = inst.V.at(i, j);
      const Integer a_min = rational_ceil((lo - v - inst.delta) / inst.delta);
      const Integer a_max = rational_floor((hi - v) / inst.delta);
      if (a_max < a_min) return 0;
      total *= a_max - a_min + 1;
      if (total > static_cast<long>(kMaxTiles))
        throw PreconditionViolated("tile grid too large: over " +
                                   std::to_string(kMaxTiles) + " tiles");
      const long long first = to_long_long_checked(a_min, "tile index");
      const long long last = to_long_long_checked(a_max, "tile index");
      auto& slots = contribution[idx];
      slots.reserve(static_cast<std::size_t>(last - first + 1));
      for (long long a = first; a <= last; ++a) {
        Rational x_lo = v + rat(a) * inst.delta;
        Rational x_hi = x_lo + inst.delta;
        if (x_lo < lo) x_lo = lo;
        if (x_hi > hi) x_hi = hi;
        slots.push_back(scaled_interval(inst.q[j], x_lo, x_hi));
      }
    }
  }

  const Rational neg_t = -inst.T;
  std::vector<std::size_t> digit(coords, 0);
  long long count = 0;
  for (;;) {
    // Row-separable exact membership: each row's form ranges over an
    // interval; clip it to [−T, T] and multiply the minimal absolute values.
    bool feasible = true;
    Rational prod_min(1);
    for (int i = 0; i < inst.m && feasible; ++i) {
      Rational r_lo = inst.gamma_prime[i];
      Rational r_hi = inst.gamma_prime[i];
      for (int j = 0; j < inst.n; ++j) {
        const int idx = i * inst.n + j;
        const auto& slot = contribution[idx][digit[idx]];
        r_lo += slot.first;
        r_hi += slot.second;
      }
      const Rational clip_lo = std::max(r_lo, neg_t);
      const Rational clip_hi = std::min(r_hi, inst.T);
      if (clip_lo > clip_hi) {
        feasible = false;
        break;
      }
      if (sgn(clip_lo) <= 0 && sgn(clip_hi) >= 0) {
        prod_min = 0;
      } else {
        const Rational abs_lo = abs(clip_lo);
        const Rational abs_hi = abs(clip_hi);
        prod_min *= std::min(abs_lo, abs_hi);
      }
    }
    if (feasible && prod_min <= inst.epsilon) ++count;

    int spin = coords - 1;
    while (spin >= 0) {
      if (++digit[spin] < contribution[spin].size()) break;
      digit[spin] = 0;
      --spin;
    }
    if (spin < 0) break;
  }
  return count;
}

Rational hypercount_lhs(const HypercountInstance& inst) {
  const long long tiles = brute_tile_count(inst);
  return rational_pow_int(inst.delta, inst.m * inst.n) * rat(tiles);
}

LogBounds hypercount_bound(const HypercountInstance& inst,
                           const Rational& precision) {
  validate_hypercount_instance(inst);
  if (sgn(precision) <= 0)
    throw PreconditionViolated("precision must be positive");
  const long long q_inf = inf_norm(inst.q);
  const Rational a_side =
      inst.T + rat(inst.n) * rat(q_inf) * inst.delta;
  const Rational a_pow = rational_pow_int(a_side, inst.m);
  const Rational numer =
      inst.epsilon + a_pow - rational_pow_int(inst.T, inst.m);
  const Rational base = rational_pow_int(rat(2), 2 * inst.m - 1) * numer /
                        rational_pow_int(rat(q_inf), inst.m) *
                        rational_pow_int(inst.D.edge + 2 * inst.delta,
                                         static_cast<long>(inst.m) *
                                             (inst.n - 1));
  if (inst.m == 1) return LogBounds::exact(base);
  const LogBounds star = log_star_bounds(a_pow / numer, precision);
  return bounds_scale(base, bounds_pow_int(star, inst.m - 1));
}

Rational hyperplane_separation(const DangerPoint& a, const DangerPoint& b) {
  if (a.q != b.q)
    throw PreconditionViolated("separation requires danger points sharing q");
  if (a.p.size() != b.p.size())
    throw PreconditionViolated("danger points must have equal row counts");
  if (a.q.empty() || is_zero_vector(a.q))
    throw PreconditionViolated("q must be a nonzero vector");
  if (a.p == b.p)
    throw SameCore("danger points share the same core (p and q equal)");

  const int n = static_cast<int>(a.q.size());
  Integer max_dp = 0;
  for (std::size_t i = 0; i < a.p.size(); ++i) {
    Integer diff = Integer(static_cast<long>(a.p[i])) -
                   Integer(static_cast<long>(b.p[i]));
    diff = abs(diff);
    if (diff > max_dp) max_dp = diff;
  }
  Integer sum_sq = 0;
  for (const long long q_j : a.q) {
    const Integer entry(static_cast<long>(q_j));
    sum_sq += entry * entry;
  }
  const Integer s = Integer(static_cast<long>(n)) * sum_sq;

  const Integer root = sqrt(s);  // floor square root
  if (root * root == s) return make_rational(max_dp, root);

  // The true separation max|Δp|/√s is strictly above 1/(n·|q|∞) whenever s
  // is not a perfect square, so refining the √s upper bound certifies the
  // required floor after finitely many steps.
  const Rational floor_bound = make_rational(1, n * inf_norm(a.q));
  Rational precision = make_rational(1, 16);
  for (int round = 0; round < kMaxRefinements; ++round) {
    const Rational root_upper = root_bounds(Rational(s), 2, precision).upper;
    const Rational lower = Rational(max_dp) / root_upper;
    if (lower >= floor_bound) return lower;
    precision /= 8;
  }
  throw Error("separation refinement failed to reach 1/(n|q|_inf)");
}

FaceCountCheck face_count_bound_check(const Cube& j_cube, const IntVector& q,
                                      const std::vector<Rational>& gamma,
                                      const Rational& c) {
  const int m = j_cube.rows;
  const int n = j_cube.cols;
  if (m < 1 || n < 1 || sgn(j_cube.edge) <= 0)
    throw PreconditionViolated("cube must be m x n with positive edge");
  if (gamma.size() != static_cast<std::size_t>(m))
    throw PreconditionViolated("gamma must have one entry per row");
  if (q.size() != static_cast<std::size_t>(n) || is_zero_vector(q))
    throw PreconditionViolated("q must be a nonzero vector of length n");
  if (sgn(c) <= 0) throw PreconditionViolated("c must be positive");

  FaceCountCheck check;
  const Rational eps = epsilon_upper(c, prod_plus(q), m + n - 1);
  for (const DangerPoint& candidate : candidate_points(j_cube, q, gamma)) {
    if (cube_meets_danger(j_cube, candidate, gamma, eps)) ++check.brute;
  }

  Integer faces;
  mpz_bin_uiui(faces.get_mpz_t(), static_cast<unsigned long>(m * n),
               static_cast<unsigned long>(m));
  mpz_mul_2exp(faces.get_mpz_t(), faces.get_mpz_t(),
               static_cast<mp_bitcnt_t>(m * n - m));

  const Rational sqrt_m_upper =
      root_bounds(rat(m), 2, make_rational(1, 64)).upper;
  const Rational q_scale = rat(n) * rat(inf_norm(q));
  const Rational widened =
      j_cube.edge + (Rational(1) + rat(2) * rat(n) * sqrt_m_upper) / q_scale;
  check.bound = Rational(faces) * rational_pow_int(widened, m) *
                rational_pow_int(q_scale, m);
  check.pass = rat(check.brute) <= check.bound;
  return check;
}

Rational band_sum(int n, long long R, int k, BandExponent kind, int m) {
  if (n < 1 || R < 2 || k < 0)
    throw PreconditionViolated("band sums need n >= 1, R >= 2, k >= 0");
  long exponent = 1;
  if (kind == BandExponent::kReciprocalHeightPower) {
    if (m < 1 || m % n != 0)
      throw PreconditionViolated(
          "band exponent 1 + m/n is integral only when n divides m");
    exponent = 1 + static_cast<long>(m / n);
  }
  Rational sum(0);
  for (const IntVector& q : enumerate_band(n, R, k)) {
    sum += rational_pow_int(rat(prod_plus(q)), -exponent);
  }
  return sum;
}

std::vector<BandGrowthRow> band_growth_ratios(int n, long long R, int k_max,
                                              const Rational& precision) {
  if (n < 1 || R < 2 || k_max < 0)
    throw PreconditionViolated("band ratios need n >= 1, R >= 2, k_max >= 0");
  if (k_max > kMaxBandIndex)
    throw PreconditionViolated("band index too large for brute enumeration");
  if (sgn(precision) <= 0)
    throw PreconditionViolated("precision must be positive");

  const LogBounds star_base =
      log_star_pow_bounds(rat(R), make_rational(1, 3), precision);
  std::vector<BandGrowthRow> rows;
  rows.reserve(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    BandGrowthRow row;
    row.k = k;
    row.sum = band_sum(n, R, k, BandExponent::kReciprocal);
    row.empty = sgn(row.sum) == 0;
    if (!row.empty) {
      const LogBounds star_top =
          log_star_pow_bounds(rat(R), make_rational(k + 1, 3), precision);
      const LogBounds denom =
          bounds_mul(bounds_pow_int(star_top, n - 1), star_base);
      row.ratio = bounds_scale(row.sum, bounds_reciprocal(denom));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

OracleReport run_hypercount_suite(long long trials, unsigned long long seed) {
  if (trials < 0) throw PreconditionViolated("trials must be nonnegative");
  static constexpr std::pair<int, int> kShapes[] = {
      {1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2},
      {2, 3}, {3, 1}, {3, 2}, {3, 3}};
  std::mt19937_64 rng(seed);
  OracleReport report;
  std::ostringstream csv;
  csv << "m,n,q,epsilon,T,delta,brute,lhs,bound_upper,pass\n";
  for (long long trial = 0; trial < trials; ++trial) {
    const auto [m, n] = kShapes[rng() % (sizeof(kShapes) / sizeof(kShapes[0]))];
    const int coords = m * n;
    // Grid sizing per shape: roughly edge/delta + 2 tiles per coordinate, so
    // cap the pitch and the domain edge as the dimension grows to keep the
    // exhaustive tile odometer around 2*10^4 cells.
    long long delta_den = 2;
    long long edge_num = 1;
    if (coords <= 2) {
      delta_den = 4 + pick_in(rng, 0, 4);
      edge_num = 1 + pick_in(rng, 0, 2);
    } else if (coords <= 4) {
      delta_den = 4 + pick_in(rng, 0, 2);
      edge_num = 1 + pick_in(rng, 0, 1);
    } else if (coords <= 6) {
      delta_den = 2 + pick_in(rng, 0, 1);
      edge_num = 1 + pick_in(rng, 0, 1);
    }
    HypercountInstance inst;
    inst.m = m;
    inst.n = n;
    inst.q = random_nonzero_vector(rng, n, 5);
    inst.T = make_rational(1, 2 + pick_in(rng, 0, 2));
    inst.epsilon =
        rational_pow_int(inst.T, m) * make_rational(1, 3 + pick_in(rng, 0, 5));
    inst.delta = make_rational(1, delta_den);
    inst.gamma_prime.resize(m);
    for (auto& g : inst.gamma_prime) g = make_rational(pick_in(rng, -3, 3), 7);
    inst.V = RationalMatrix(m, n);
    for (auto& v : inst.V.entries) v = make_rational(pick_in(rng, -2, 2), 8);
    std::vector<Rational> origin(static_cast<std::size_t>(m) * n);
    for (auto& o : origin) o = make_rational(pick_in(rng, -4, 4), 4);
    inst.D = Cube(m, n, std::move(origin), make_rational(edge_num, 2));

    const long long brute = brute_tile_count(inst);
    const Rational lhs =
        rational_pow_int(inst.delta, m * n) * rat(brute);
    const LogBounds bound = hypercount_bound(inst);
    const bool pass = lhs <= bound.upper;
    if (!pass) ++report.failures;
    csv << m << ',' << n << ',' << join_ints(inst.q) << ','
        << format_rational(inst.epsilon) << ',' << format_rational(inst.T)
        << ',' << format_rational(inst.delta) << ',' << brute << ','
        << format_rational(lhs) << ',' << format_rational(bound.upper) << ','
        << (pass ? "pass" : "FAIL") << '\n';
  }
  report.trials = trials;
  report.csv = csv.str();
  return report;
}

OracleReport run_separation_suite(long long trials, unsigned long long seed) {
  if (trials < 0) throw PreconditionViolated("trials must be nonnegative");
  std::mt19937_64 rng(seed);
  OracleReport report;
  std::ostringstream csv;
  csv << "n,q,max_dp,separation,core_points_dist_sq,pass\n";
  for (long long trial = 0; trial < trials; ++trial) {
    const int n = static_cast<int>(1 + pick_in(rng, 0, 3));
    const int m = static_cast<int>(1 + pick_in(rng, 0, 2));
    DangerPoint a;
    DangerPoint b;
    a.q = random_nonzero_vector(rng, n, 9);
    b.q = a.q;
    a.p.resize(m);
    b.p.resize(m);
    for (int i = 0; i < m; ++i) {
      a.p[i] = pick_in(rng, -20, 20);
      b.p[i] = pick_in(rng, -20, 20);
    }
    if (a.p == b.p) b.p[0] += 1;

    const Rational sep = hyperplane_separation(a, b);
    bool pass = sep * rat(n) * rat(inf_norm(a.q)) >= 1;

    // Cross-check with a sampled point on each core: any two points of the
    // two cores are at least the certified separation apart.
    int pivot = 0;
    for (int j = 0; j < n; ++j) {
      if (std::abs(a.q[j]) > std::abs(a.q[pivot])) pivot = j;
    }
    Rational dist_sq(0);
    Integer max_dp = 0;
    for (int i = 0; i < m; ++i) {
      Rational residual_a = rat(a.p[i]);
      Rational residual_b = rat(b.p[i]);
      for (int j = 0; j < n; ++j) {
        if (j == pivot) continue;
        const Rational x_a = make_rational(pick_in(rng, -8, 8), 4);
        const Rational x_b = make_rational(pick_in(rng, -8, 8), 4);
        residual_a += rat(a.q[j]) * x_a;
        residual_b += rat(a.q[j]) * x_b;
        const Rational gap = x_a - x_b;
        dist_sq += gap * gap;
      }
      const Rational pivot_gap =
          (residual_b - residual_a) / rat(a.q[pivot]);
      dist_sq += pivot_gap * pivot_gap;
      Integer diff = Integer(static_cast<long>(a.p[i])) -
                     Integer(static_cast<long>(b.p[i]));
      diff = abs(diff);
      if (diff > max_dp) max_dp = diff;
    }
    if (dist_sq < sep * sep) pass = false;

    if (!pass) ++report.failures;
    csv << n << ',' << join_ints(a.q) << ',' << max_dp.get_str() << ','
        << format_rational(sep) << ',' << format_rational(dist_sq) << ','
        << (pass ? "pass" : "FAIL") << '\n';
  }
  report.trials = trials;
  report.csv = csv.str();
  return report;
}

OracleReport run_faces_suite(long long trials, unsigned long long seed) {
  if (trials < 0) throw PreconditionViolated("trials must be nonnegative");
  static constexpr std::pair<int, int> kShapes[] = {
      {1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 3}};
  std::mt19937_64 rng(seed);
  OracleReport report;
  std::ostringstream csv;
  csv << "m,n,q,c,edge,brute,bound,pass\n";
  for (long long trial = 0; trial < trials; ++trial) {
    const auto [m, n] = kShapes[rng() % (sizeof(kShapes) / sizeof(kShapes[0]))];
    const IntVector q = random_nonzero_vector(rng, n, 5);
    std::vector<Rational> gamma(m);
    for (auto& g : gamma) g = make_rational(pick_in(rng, -3, 3), 7);
    const Rational c = make_rational(1, 2 + pick_in(rng, 0, 8));
    std::vector<Rational> origin(static_cast<std::size_t>(m) * n);
    for (auto& o : origin) o = make_rational(pick_in(rng, -6, 6), 3);
    const Cube j_cube(m, n, std::move(origin),
                      make_rational(1 + pick_in(rng, 0, 3), 2));

    const FaceCountCheck check = face_count_bound_check(j_cube, q, gamma, c);
    if (!check.pass) ++report.failures;
    csv << m << ',' << n << ',' << join_ints(q) << ',' << format_rational(c)
        << ',' << format_rational(j_cube.edge) << ',' << check.brute << ','
        << format_rational(check.bound) << ','
        << (check.pass ? "pass" : "FAIL") << '\n';
  }
  report.trials = trials;
  report.csv = csv.str();
  return report;
}

OracleReport run_bands_suite(int k_max) {
  if (k_max < 0) throw PreconditionViolated("k_max must be nonnegative");
  if (k_max > kMaxBandIndex) k_max = kMaxBandIndex;
  static constexpr std::pair<int, long long> kPairs[] = {{1, 4}, {1, 3}, {2, 3}};
  // Stability envelope: non-empty ratios must stay within [kappa/4, 4*kappa]
  // for the fixed reference kappa = 2.
  const Rational ratio_lo = make_rational(1, 2);
  const Rational ratio_hi = rat(8);
  const Rational precision = make_rational(1, 1LL << 24);

  OracleReport report;
  std::ostringstream csv;
  csv << "n,R,k,empty,sum,ratio_lower,ratio_upper,pass\n";
  for (const auto& [n, R] : kPairs) {
    for (const BandGrowthRow& row : band_growth_ratios(n, R, k_max, precision)) {
      ++report.trials;
      bool pass = true;
      if (!row.empty)
        pass = row.ratio.upper <= ratio_hi && row.ratio.lower >= ratio_lo;
      if (!pass) ++report.failures;
      csv << n << ',' << R << ',' << row.k << ',' << (row.empty ? 1 : 0) << ','
          << format_rational(row.sum) << ','
          << format_rational(row.ratio.lower) << ','
          << format_rational(row.ratio.upper) << ','
          << (pass ? "pass" : "FAIL") << '\n';
    }
  }
  report.csv = csv.str();
  return report;
}

}  // namespace madmat
