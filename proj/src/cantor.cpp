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

#include "madmat/cantor.hpp"

#include <algorithm>
#include <string>

namespace madmat {

namespace {

Rational power_of_R(long long R, int exponent) {
  return rational_pow_int(Rational(static_cast<long>(R)), exponent);
}

// ∏_{h=h_k}^{k} R_h^l, exactly.
Rational window_product(const CantorScheme& scheme, int k) {
  Rational prod = 1;
  for (long long h = scheme.h[k]; h <= k; ++h) {
    prod *= power_of_R(scheme.R[h], scheme.l);
  }
  return prod;
}

}  // namespace

void validate_scheme(const CantorScheme& scheme, int K) {
  if (scheme.l < 1) throw PreconditionViolated("scheme dimension l must be >= 1");
  if (K < 0) throw PreconditionViolated("negative depth");
  const std::size_t needed = static_cast<std::size_t>(K) + 1;
  if (scheme.R.size() < needed || scheme.r.size() < needed ||
      scheme.h.size() < needed) {
    throw PreconditionViolated("scheme sequences shorter than requested depth");
  }
  if (sgn(scheme.edge0) <= 0) {
    throw PreconditionViolated("root edge must be positive");
  }
  for (int k = 0; k <= K; ++k) {
    if (scheme.R[k] < 1) throw PreconditionViolated("R_k must be >= 1");
    if (sgn(scheme.r[k]) < 0) throw PreconditionViolated("r_k must be >= 0");
    if (scheme.h[k] < 0 || scheme.h[k] > k) {
      throw PreconditionViolated("h_k must satisfy 0 <= h_k <= k");
    }
  }
}

TSequence t_sequence(const CantorScheme& scheme, int K) {
  validate_scheme(scheme, K);
  TSequence t;
  t.values.reserve(K + 1);
  for (int k = 0; k <= K; ++k) {
    Rational divisor = 1;  // ∏_{i=h_k}^{k−1} t_i; empty when h_k = k
    for (long long i = scheme.h[k]; i < k; ++i) {
      divisor *= t.values[static_cast<std::size_t>(i)];
    }
    if (sgn(divisor) == 0) {
      throw DegenerateProduct("prefix product of t vanishes at k=" +
                              std::to_string(k));
    }
    t.values.push_back(power_of_R(scheme.R[k], scheme.l) -
                       scheme.r[k] / divisor);
  }
  return t;
}

NonemptyCheck check_nonempty_bound(const CantorScheme& scheme, int K) {
  validate_scheme(scheme, K);
  NonemptyCheck check;
  for (int k = 0; k <= K; ++k) {
    NonemptyCheck::Row row;
    row.k = k;
    const Rational max2_h(static_cast<long>(std::max<long long>(2, scheme.h[k])));
    const Rational max2_km1(static_cast<long>(std::max<long long>(2, k - 1)));
    const Rational max2_k(static_cast<long>(std::max<long long>(2, k)));
    row.g = max2_h / (8 * max2_km1);
    row.budget = row.g / max2_k * window_product(scheme, k);
    row.r = scheme.r[k];
    row.pass = row.r <= row.budget;
    check.all_pass = check.all_pass && row.pass;
    check.rows.push_back(row);
  }
  return check;
}

TLowerBoundCheck t_lower_bound_check(const CantorScheme& scheme, int K) {
  TLowerBoundCheck check;
  check.precondition_ok = check_nonempty_bound(scheme, K).all_pass;
  if (!check.precondition_ok) return check;
  const TSequence t = t_sequence(scheme, K);
  check.all_pass = true;
  for (int k = 0; k <= K; ++k) {
    TLowerBoundCheck::Row row;
    row.k = k;
    row.t = t.values[k];
    const Rational max2_k(static_cast<long>(std::max(2, k)));
    row.bound = power_of_R(scheme.R[k], scheme.l) * (1 - 1 / max2_k);
    row.pass = row.t >= row.bound;
    check.all_pass = check.all_pass && row.pass;
    check.rows.push_back(row);
  }
  return check;
}

std::vector<Rational> jcount_lower(const TSequence& t) {
  std::vector<Rational> counts;
  counts.reserve(t.values.size() + 1);
  Rational prod = 1;
  counts.push_back(prod);
  for (const Rational& tk : t.values) {
    prod *= tk;
    counts.push_back(prod);
  }
  return counts;
}

}  // namespace madmat
