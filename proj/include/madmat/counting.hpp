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

#ifndef MADMAT_COUNTING_HPP_
#define MADMAT_COUNTING_HPP_

// Brute-force enumeration oracles and closed-form bounds for the counting
// inequalities the construction relies on: the tile-count bound, the
// separation of parallel danger cores, the per-cube face bound, and exact
// band sums.  Every oracle is exact (integer or rational arithmetic); the
// closed-form bounds carry certified enclosures where a logarithm appears.

#include <string>
#include <vector>

#include "madmat/bounds.hpp"
#include "madmat/geometry.hpp"
#include "madmat/rational.hpp"

namespace madmat {

// Two danger points with the same q whose cores coincide (p = p′) have no
// separation to measure.
class SameCore : public Error {
 public:
  explicit SameCore(const std::string& what) : Error(what) {}
};

// One instance of the tile-counting inequality.  The counted set is
//   𝒞 = {X : |X_i·q + γ′_i| ≤ T for every row i, ∏_i |X_i·q + γ′_i| ≤ ε}
// intersected with the cube D, and tiles are the closed cells of the grid
// with pitch delta whose corner offsets are the entries of V.
struct HypercountInstance {
  int m = 0;
  int n = 0;
  std::vector<Rational> gamma_prime;  // length m
  IntVector q;                        // length n, nonzero
  Rational epsilon;
  Rational T;
  Rational delta;                     // grid pitch, > 0
  RationalMatrix V;                   // m×n per-coordinate grid offsets
  Cube D;                             // m×n domain cube
};

// Structural checks plus the certified precondition ε/T^m < e^{−1} (throws
// PreconditionViolated when violated).
void validate_hypercount_instance(const HypercountInstance& inst);

// Exact number of grid tiles τ with τ ∩ D ∩ 𝒞 ≠ ∅.  Membership of an
// axis-aligned box in 𝒞 is decided exactly: the row values X_i·q + γ′_i
// range over independent intervals (each row uses its own coordinates), so
// the box meets 𝒞 iff every row interval clipped to [−T, T] is non-empty
// and the product of the per-row minimal absolute values is ≤ ε.
long long brute_tile_count(const HypercountInstance& inst);

// δ^{mn}·brute_tile_count — the measure-normalized left-hand side.
Rational hypercount_lhs(const HypercountInstance& inst);

// Certified enclosure of the closed-form tile bound
//   2^{2m−1}·(ε+A^m−T^m)/|q|∞^m·log*(A^m/(ε+A^m−T^m))^{m−1}·(edge(D)+2δ)^{m(n−1)}
// with A = T + n·|q|∞·δ; exact for m = 1 (the log* exponent vanishes).
LogBounds hypercount_bound(const HypercountInstance& inst,
                           const Rational& precision = make_rational(
                               1, 1LL << 32));

// Certified rational lower bound on the sup-norm distance
// max_i |p_i − p′_i| / (√n·|q|₂) between the parallel affine cores of two
// danger points sharing q; internally refined until the returned value is
// ≥ 1/(n·|q|∞), which always holds for the true distance.  Exact when
// n·Σq_j² is a perfect square.
// Throws SameCore when p = p′ and PreconditionViolated when the q differ.
Rational hyperplane_separation(const DangerPoint& a, const DangerPoint& b);

struct FaceCountCheck {
  long long brute = 0;   // danger points of this q whose set meets the cube
  Rational bound;        // closed-form face bound (rationalized upward)
  bool pass = false;     // brute ≤ bound
};

// Counts primitive danger points P = (p, q) with J ∩ Δ(P) ≠ ∅ against the
// face bound 2^{mn−m}·C(mn,m)·(edge(J) + (1+2n·√m̄)/(n|q|∞))^m·(n|q|∞)^m,
// where √m̄ is a certified rational upper bound on √m.
FaceCountCheck face_count_bound_check(const Cube& j_cube, const IntVector& q,
                                      const std::vector<Rational>& gamma,
                                      const Rational& c);

enum class BandExponent {
  kReciprocal,            // ∏(q)^{−1}
  kReciprocalHeightPower  // ∏(q)^{−1−m/n}; rational only when n divides m
};

// Exact Σ over enumerate_band(n, R, k) of ∏(q)^{exponent}; 0 for an empty
// band.  The second exponent kind needs m ≥ 1 with n | m (otherwise the
// terms are irrational) and throws PreconditionViolated.
Rational band_sum(int n, long long R, int k, BandExponent kind, int m = 0);

struct BandGrowthRow {
  int k = 0;
  bool empty = false;  // band has no vectors; ratio meaningless
  Rational sum;        // band_sum(n, R, k, kReciprocal)
  LogBounds ratio;     // sum / (log*(R^{(k+1)/3})^{n−1}·log*(R^{1/3}))
};

// Measured growth ratios of the reciprocal band sums against the logarithmic
// envelope, for k = 0..k_max.  No assertion is made here; stability of the
// ratio is a reported, test-asserted property.
std::vector<BandGrowthRow> band_growth_ratios(int n, long long R, int k_max,
                                              const Rational& precision);

// Randomized oracle suites behind the command-line `oracle` subcommand.
// Each returns CSV rows (one per trial) and the failure count; generators
// use a splitmix-style generator seeded explicitly so runs reproduce
// everywhere.
struct OracleReport {
  long long trials = 0;
  long long failures = 0;
  std::string csv;
  bool pass() const { return failures == 0; }
};

OracleReport run_hypercount_suite(long long trials, unsigned long long seed);
OracleReport run_separation_suite(long long trials, unsigned long long seed);
OracleReport run_faces_suite(long long trials, unsigned long long seed);
// Deterministic: rows for the fixed (n, R) pairs {(1,4),(1,3),(2,3)} with
// k = 0..k_max; fails when non-empty-band ratios within a pair spread by
// more than a factor of 4.
OracleReport run_bands_suite(int k_max);

}  // namespace madmat

#endif  // MADMAT_COUNTING_HPP_
