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

#ifndef MADMAT_DIOPHANTINE_HPP_
#define MADMAT_DIOPHANTINE_HPP_

// Exact Diophantine primitives:
//
//   ‖x‖      distance from a rational to the nearest integer,
//   ∏(q)     the multiplicative height ∏_j max{1, |q_j|},
//   form(q)  ∏(q) · log*(∏(q))^(m+n−1) · ∏_i ‖A_i·q + γ_i‖,
//
// plus exhaustive lattice enumeration under a height budget and the certified
// finite-range minimization of the form.  The form is the quantity whose
// positive uniform lower bound over a finite q-range a witness certificate
// asserts; all bounds on it are two-sided and exact-rational.

#include <cstddef>
#include <functional>
#include <vector>

#include "madmat/bounds.hpp"
#include "madmat/rational.hpp"

namespace madmat {

// Dense rational matrix, row-major.  Also used for 1×n row vectors.
struct RationalMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Rational> entries;  // rows*cols, row-major

  RationalMatrix() = default;
  RationalMatrix(int r, int c) : rows(r), cols(c), entries(r * c, Rational(0)) {}

  const Rational& at(int i, int j) const { return entries[i * cols + j]; }
  Rational& at(int i, int j) { return entries[i * cols + j]; }
};

// min over integers z of |x − z|; always in [0, 1/2], exactly 1/2 at ties.
Rational dist_nearest_int(const Rational& x);

// ∏_j max{1, |q_j|} ≥ 1; defined for every integer vector including zero.
long long prod_plus(const IntVector& q);

// Row i of A applied to q, plus gamma_i: Σ_j A[i][j]·q_j + γ_i.
Rational row_form(const RationalMatrix& a, const std::vector<Rational>& gamma,
                  int i, const IntVector& q);

// Two-sided certified bounds on form(q) with width ≤ precision; exact
// (lower = upper) whenever ∏(q) ≤ e, i.e. ∏(q) ∈ {1, 2}, or the product of
// distances vanishes.  Requires q ≠ 0.
LogBounds mad_form_bounds(const RationalMatrix& a,
                          const std::vector<Rational>& gamma,
                          const IntVector& q, const Rational& precision);

// All nonzero q ∈ Z^n with ∏(q) ≤ max_prod, in lexicographic order.
// Throws PreconditionViolated when the search box is unreasonably large
// (guards accidental astronomically-sized enumerations).
std::vector<IntVector> enumerate_with_prod_bound(int n, long long max_prod);

// Streaming variant (no materialized list); `visit` sees vectors in
// lexicographic order.
void for_each_with_prod_bound(int n, long long max_prod,
                              const std::function<void(const IntVector&)>& visit);

struct ScanResult {
  Rational min_lower;  // minimum certified lower bound over the range
  IntVector argmin;    // lexicographically least q attaining the minimum
  long long scanned = 0;
};

// Minimum of the certified lower bounds of mad_form_bounds over all nonzero
// q with ∏(q) ≤ q_budget, each evaluated to width ≤ precision.  Ties on the
// minimum are broken by lexicographic order on q.  `threads` may split the
// enumeration; results are merged deterministically and do not depend on it.
ScanResult scan_min_form(const RationalMatrix& a,
                         const std::vector<Rational>& gamma, long long q_budget,
                         const Rational& precision, int threads = 1);

}  // namespace madmat

#endif  // MADMAT_DIOPHANTINE_HPP_
