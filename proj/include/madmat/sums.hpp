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

#ifndef MADMAT_SUMS_HPP_
#define MADMAT_SUMS_HPP_

// Sums of reciprocal fractional parts S_L(Q) = Σ_{q∈X\{0}} ∏_i ‖L_i·q‖^{−1}
// over the box X = ∏_j [−Q_j, Q_j], plus growth diagnostics of S against the
// logarithmic envelopes Q^n·log*(Q)^m and Q^n·log*(Q)^{2m+n−2}, and the
// semimultiplicative margin min |q|∞^n·∏‖L_i q‖/φ(|q|∞) for step functions φ.

#include <string>
#include <vector>

#include "madmat/bounds.hpp"
#include "madmat/diophantine.hpp"
#include "madmat/rational.hpp"

namespace madmat {

// Some row has ‖L_i·q‖ = 0, so the sum has an infinite term.
class DivergentTerm : public Error {
 public:
  DivergentTerm(IntVector q, int row);

  const IntVector& q() const { return q_; }
  int row() const { return row_; }

 private:
  IntVector q_;
  int row_;
};

struct SumSpec {
  RationalMatrix L;          // m×n
  std::vector<long long> Q;  // n box radii, each ≥ 1
  Rational precision;        // 0 → exact rational evaluation
};

// Certified bounds on S_L(Q).  With precision 0 the result is exact (lower =
// upper).  With positive precision each term is rounded down/up onto a dyadic
// grid fine enough that the total width is ≤ precision; terms are accumulated
// per shell of |q|∞ and combined in shell order, and the q ↦ −q symmetry is
// exploited by evaluating sign-canonical representatives (first nonzero
// coordinate positive) and doubling after rounding.
LogBounds sum_reciprocal_fractional(const SumSpec& spec);

struct GrowthRow {
  long long Q = 0;
  LogBounds S;
  LogBounds ratio_log_m;     // S / (Q^n·log*(Q)^m)
  LogBounds ratio_log_full;  // S / (Q^n·log*(Q)^{2m+n−2})
};

// One row per entry of q_list (each ≥ 2), evaluated over the cubic box
// Q = (Q,…,Q).  No assertion is made on the ratios; stability over a window
// is a reported, test-asserted property.
std::vector<GrowthRow> growth_table(const RationalMatrix& L,
                                    const std::vector<long long>& q_list,
                                    int m, int n,
                                    const Rational& precision = make_rational(
                                        1, 1LL << 20));

// CSV with header
// Q,S_lower,S_upper,ratio_logm_lower,ratio_logm_upper,ratio_logfull_lower,
// ratio_logfull_upper; all values canonical rational strings.
std::string growth_table_csv(const std::vector<GrowthRow>& rows);

// Step function φ(x) = value of the first step with x ≤ up_to, else the last
// value; steps must have positive non-increasing values and strictly
// increasing thresholds.
struct PhiStep {
  long long up_to = 0;
  Rational value;
};

struct MarginResult {
  Rational margin;   // min over 0 < |q|∞ ≤ q_max of |q|∞^n·∏‖L_i·q‖/φ(|q|∞)
  IntVector argmin;  // lexicographically least minimizer
};

// Exact minimum margin; zero margins are reported (with the q attaining
// them), never thrown.
MarginResult semimult_margin(const RationalMatrix& L,
                             const std::vector<PhiStep>& phi, long long q_max);

}  // namespace madmat

#endif  // MADMAT_SUMS_HPP_
