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

#ifndef MADMAT_GEOMETRY_HPP_
#define MADMAT_GEOMETRY_HPP_

// Exact geometry of matrix cubes and danger sets.
//
// A Cube is an axis-aligned product of equal-length closed rational intervals
// in the space of m×n matrices.  A DangerPoint P = (p, q) with primitive
// (p, q) parameterizes the set Δ(P) of matrices X with |X_i·q + γ_i + p_i| ≤
// 1/2 for every row and ∏_i |X_i·q + γ_i + p_i| ≤ ε(q), where
// ε(q) = c / (∏(q)·log*(∏(q))^(m+n−1)).  Because the row forms are
// independent coordinates of X, the exact intersection test is row-separable:
// clip each row's value interval to [−1/2, 1/2] and compare the product of
// minimal absolute values against ε.  Only ε needs rounding, and it is always
// rounded UP, so a cube that meets Δ(P) is never reported clear.

#include <vector>

#include "madmat/diophantine.hpp"
#include "madmat/rational.hpp"

namespace madmat {

struct Cube {
  int rows = 0;
  int cols = 0;
  std::vector<Rational> origin;  // rows*cols lower endpoints, row-major
  Rational edge = Rational(0);

  Cube() = default;
  Cube(int m, int n, std::vector<Rational> origin_entries, Rational edge_len);

  const Rational& lo(int i, int j) const { return origin[i * cols + j]; }
  Rational hi(int i, int j) const { return origin[i * cols + j] + edge; }

  // Number of children of an R-fold split per axis: R^(rows·cols).
  static long long child_count(long long R, int rows, int cols);

  // Child cube of the R-fold split; `index` is read in base R with the
  // row-major entry (0,0) as the most significant digit, so ascending index
  // order is lexicographic order on the digit grid.
  Cube child(long long R, long long index) const;

  RationalMatrix center() const;
  bool contains(const RationalMatrix& point) const;  // closed containment
};

struct DangerPoint {
  IntVector p;  // length m
  IntVector q;  // length n, nonzero
};

struct Hyperplane {
  RationalMatrix coefficients;  // m×n, not all zero
  Rational offset;
};

// All nonzero q ∈ Z^n with R^k ≤ ∏(q)³ < R^(k+1), by exact integer
// comparison, in lexicographic order.  Bands partition the nonzero lattice:
// the union of bands 0..K−1 is exactly {q : ∏(q)³ < R^K}.
std::vector<IntVector> enumerate_band(int n, long long R, int k);

// Largest height ∏(q) admitted by bands 0..K−1, i.e. max{v ≥ 0 : v³ < R^K}.
// 0 means the range is empty (K = 0).
long long band_height_limit(long long R, int K);

// Certified upper bound on ε(q) = c/(v·log*(v)^(m+n−1)) for v = ∏(q);
// exact when v ≤ 2.
Rational epsilon_upper(const Rational& c, long long height, int exponent);

// All DangerPoints (p, q) with the given q whose row intervals over J,
// shifted by p, meet [−1/2, 1/2]; filtered to gcd(p₁..p_m, q₁..q_n) = 1,
// in lexicographic order on p.
std::vector<DangerPoint> candidate_points(const Cube& J, const IntVector& q,
                                          const std::vector<Rational>& gamma);

// Conservative exact test of I ∩ Δ(P) ≠ ∅ given an upper bound on ε(q):
// true whenever the cube meets the danger set, possibly true for cubes that
// barely miss it (never the other way around).
bool cube_meets_danger(const Cube& I, const DangerPoint& P,
                       const std::vector<Rational>& gamma,
                       const Rational& eps_upper);

// Exact test: does the closed cube meet {X : Σ coeff_ij·X_ij = offset}?
bool cube_meets_hyperplane(const Cube& I, const Hyperplane& H);

// Exact value of the hyperplane's linear form at a point.
Rational hyperplane_form_at(const Hyperplane& H, const RationalMatrix& X);

}  // namespace madmat

#endif  // MADMAT_GEOMETRY_HPP_
