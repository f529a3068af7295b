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

#ifndef MADMAT_CANTOR_HPP_
#define MADMAT_CANTOR_HPP_

// Abstract survival analysis for recursive cube subdivisions.
//
// A scheme splits every generation-k cube into R_k^l equal children and then
// removes, for each surviving ancestor at generation h_k, at most r_k of the
// new children descending from it.  The survival sequence
//
//   t_k = R_k^l − r_k / ∏_{i=h_k}^{k−1} t_i        (empty products are 1)
//
// controls non-emptiness: if every t_k > 0 then every generation is
// non-empty, and #J_k ≥ ∏_{h<k} t_h.  The admissible removal budget
//
//   r_k ≤ g_k / max{2,k} · ∏_{h=h_k}^{k} R_h^l,
//   g_k = max{2, h_k} / (8·max{2, k−1})
//
// implies the explicit lower bound t_k ≥ R_k^l·(1 − 1/max{2,k}), which this
// module checks exactly, term by term, with no rounding anywhere.

#include <vector>

#include "madmat/rational.hpp"

namespace madmat {

// A required prefix product ∏ t_i is zero, so the recurrence is undefined.
class DegenerateProduct : public Error {
 public:
  explicit DegenerateProduct(const std::string& what) : Error(what) {}
};

struct CantorScheme {
  int l = 1;                 // ambient split exponent (= m·n downstream)
  Rational edge0 = Rational(1);  // edge of the root cube
  std::vector<long long> R;  // R_k ≥ 1, one per generation step
  std::vector<Rational> r;   // removal caps r_k ≥ 0 (rational budgets allowed)
  std::vector<long long> h;  // reference generations, 0 ≤ h_k ≤ k
};

// Validates field shapes and the invariants above for steps 0..K.
void validate_scheme(const CantorScheme& scheme, int K);

struct TSequence {
  std::vector<Rational> values;  // t_0 .. t_K
};

// Exact t_0..t_K by the survival recurrence.
TSequence t_sequence(const CantorScheme& scheme, int K);

struct NonemptyCheck {
  struct Row {
    int k;
    Rational g;       // g_k
    Rational budget;  // g_k/max{2,k} · ∏_{h=h_k}^{k} R_h^l
    Rational r;       // the scheme's r_k
    bool pass;        // r_k ≤ budget
  };
  std::vector<Row> rows;
  bool all_pass = true;
};

// Per-k removal budget test r_k ≤ g_k/max{2,k}·∏ R_h^l, evaluated exactly.
NonemptyCheck check_nonempty_bound(const CantorScheme& scheme, int K);

struct TLowerBoundCheck {
  bool precondition_ok = false;  // check_nonempty_bound passes up to K
  struct Row {
    int k;
    Rational t;
    Rational bound;  // R_k^l·(1 − 1/max{2,k})
    bool pass;       // t_k ≥ bound
  };
  std::vector<Row> rows;  // empty when precondition fails
  bool all_pass = false;
};

// Verifies t_k ≥ R_k^l·(1 − 1/max{2,k}) exactly for k ≤ K; reports a
// precondition failure (without rows) when the removal budgets are violated.
TLowerBoundCheck t_lower_bound_check(const CantorScheme& scheme, int K);

// Prefix products ∏_{h<k} t_h for k = 0..K+1: lower bounds on #J_k given
// #J_0 = 1.  Entry 0 is the empty product 1.
std::vector<Rational> jcount_lower(const TSequence& t);

}  // namespace madmat

#endif  // MADMAT_CANTOR_HPP_
