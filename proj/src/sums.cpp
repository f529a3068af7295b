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

#include "madmat/sums.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "madmat/certified.hpp"

namespace madmat {

namespace {

constexpr long long kMaxBoxCells = 100'000'000;

Rational rat(long long v) { return Rational(static_cast<long>(v)); }

std::string format_vector(const IntVector& q) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i != 0) out << ", ";
    out << q[i];
  }
  out << ')';
  return out.str();
}

void validate_sum_spec(const SumSpec& spec) {
  if (spec.L.rows < 1 || spec.L.cols < 1)
    throw PreconditionViolated("matrix must be at least 1 x 1");
  if (spec.Q.size() != static_cast<std::size_t>(spec.L.cols))
    throw PreconditionViolated("box needs one radius per matrix column");
  Integer cells = 1;
  for (const long long radius : spec.Q) {
    if (radius < 1) throw PreconditionViolated("box radii must be >= 1");
    cells *= Integer(static_cast<long>(2 * radius + 1));
    if (cells > static_cast<long>(kMaxBoxCells))
      throw PreconditionViolated("box too large to enumerate");
  }
  if (sgn(spec.precision) < 0)
    throw PreconditionViolated("precision must be >= 0");
}

// Lexicographic walk over the sign-canonical half of the box (first nonzero
// coordinate positive); `visit` receives q and its shell index |q|∞.
template <typename Visit>
void for_each_canonical(const std::vector<long long>& radii, Visit visit) {
  const int n = static_cast<int>(radii.size());
  IntVector q(n, 0);
  int lead = -1;  // index of the first nonzero coordinate, -1 while all zero
  // Depth-first odometer: coordinate `lead` runs over 1..Q only; coordinates
  // after it over the full range.
  auto walk = [&](auto&& self, int j) -> void {
    if (j == n) {
      if (lead >= 0) visit(q, inf_norm(q));
      return;
    }
    if (lead >= 0) {
      for (long long v = -radii[j]; v <= radii[j]; ++v) {
        q[j] = v;
        self(self, j + 1);
      }
      q[j] = 0;
      return;
    }
    q[j] = 0;
    self(self, j + 1);  // still all-zero prefix
    lead = j;
    for (long long v = 1; v <= radii[j]; ++v) {
      q[j] = v;
      self(self, j + 1);
    }
    lead = -1;
    q[j] = 0;
  };
  walk(walk, 0);
}

// ∏_i ‖L_i·q‖ as an exact rational; throws DivergentTerm at a zero row.
Rational product_of_distances(const RationalMatrix& l, const IntVector& q) {
  Rational prod(1);
  for (int i = 0; i < l.rows; ++i) {
    Rational value(0);
    for (int j = 0; j < l.cols; ++j) value += l.at(i, j) * rat(q[j]);
    const Rational dist = dist_nearest_int(value);
    if (sgn(dist) == 0) throw DivergentTerm(q, i);
    prod *= dist;
  }
  return prod;
}

}  // namespace

DivergentTerm::DivergentTerm(IntVector q, int row)
    : Error("divergent term at q = " + format_vector(q) + ", row " +
            std::to_string(row)),
      q_(std::move(q)),
      row_(row) {}

LogBounds sum_reciprocal_fractional(const SumSpec& spec) {
  validate_sum_spec(spec);
  long long max_shell = 0;
  Integer nonzero_cells = 1;
  for (const long long radius : spec.Q) {
    max_shell = std::max(max_shell, radius);
    nonzero_cells *= Integer(static_cast<long>(2 * radius + 1));
  }
  nonzero_cells -= 1;

  if (sgn(spec.precision) == 0) {
    std::vector<Rational> shell_sum(static_cast<std::size_t>(max_shell) + 1,
                                    Rational(0));
    for_each_canonical(spec.Q, [&](const IntVector& q, long long shell) {
      shell_sum[static_cast<std::size_t>(shell)] +=
          Rational(1) / product_of_distances(spec.L, q);
    });
    Rational total(0);
    for (const Rational& s : shell_sum) total += s;
    total *= 2;
    return LogBounds::exact(total);
  }

  // Dyadic mode: round every term down/up onto the grid 2^{−s} with
  // 2^s > (#nonzero cells)/precision, so the summed width is ≤ precision.
  const Integer steps = rational_ceil(Rational(nonzero_cells) / spec.precision);
  const auto bits =
      static_cast<unsigned long>(mpz_sizeinbase(steps.get_mpz_t(), 2));
  const Integer scale = Integer(1) << bits;
  const Rational scale_r(scale);
  std::vector<Integer> shell_lo(static_cast<std::size_t>(max_shell) + 1,
                                Integer(0));
  std::vector<Integer> shell_hi(shell_lo);
  for_each_canonical(spec.Q, [&](const IntVector& q, long long shell) {
    const Rational scaled =
        scale_r / product_of_distances(spec.L, q);
    shell_lo[static_cast<std::size_t>(shell)] += rational_floor(scaled);
    shell_hi[static_cast<std::size_t>(shell)] += rational_ceil(scaled);
  });
  Integer lo(0);
  Integer hi(0);
  for (std::size_t shell = 0; shell < shell_lo.size(); ++shell) {
    lo += shell_lo[shell];
    hi += shell_hi[shell];
  }
  return LogBounds(2 * Rational(lo) / scale_r, 2 * Rational(hi) / scale_r,
                   spec.precision);
}

std::vector<GrowthRow> growth_table(const RationalMatrix& l,
                                    const std::vector<long long>& q_list,
                                    int m, int n, const Rational& precision) {
  if (l.rows != m || l.cols != n || m < 1 || n < 1)
    throw PreconditionViolated("matrix shape must match m and n");
  if (sgn(precision) < 0)
    throw PreconditionViolated("precision must be >= 0");
  const Rational log_precision =
      sgn(precision) == 0 ? make_rational(1, 1LL << 20) : precision;

  std::vector<GrowthRow> rows;
  rows.reserve(q_list.size());
  for (const long long q : q_list) {
    if (q < 2) throw PreconditionViolated("growth table needs Q >= 2");
    GrowthRow row;
    row.Q = q;
    SumSpec spec{l, std::vector<long long>(static_cast<std::size_t>(n), q),
                 precision};
    row.S = sum_reciprocal_fractional(spec);
    const Rational q_pow = rational_pow_int(rat(q), n);
    const LogBounds star = log_star_bounds(rat(q), log_precision);
    const LogBounds denom_m = bounds_scale(q_pow, bounds_pow_int(star, m));
    const LogBounds denom_full =
        bounds_scale(q_pow, bounds_pow_int(star, 2 * m + n - 2));
    row.ratio_log_m = bounds_mul(row.S, bounds_reciprocal(denom_m));
    row.ratio_log_full = bounds_mul(row.S, bounds_reciprocal(denom_full));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string growth_table_csv(const std::vector<GrowthRow>& rows) {
  std::ostringstream csv;
  csv << "Q,S_lower,S_upper,ratio_logm_lower,ratio_logm_upper,"
         "ratio_logfull_lower,ratio_logfull_upper\n";
  for (const GrowthRow& row : rows) {
    csv << row.Q << ',' << format_rational(row.S.lower) << ','
        << format_rational(row.S.upper) << ','
        << format_rational(row.ratio_log_m.lower) << ','
        << format_rational(row.ratio_log_m.upper) << ','
        << format_rational(row.ratio_log_full.lower) << ','
        << format_rational(row.ratio_log_full.upper) << '\n';
  }
  return csv.str();
}

MarginResult semimult_margin(const RationalMatrix& l,
                             const std::vector<PhiStep>& phi,
                             long long q_max) {
  if (l.rows < 1 || l.cols < 1)
    throw PreconditionViolated("matrix must be at least 1 x 1");
  if (q_max < 1) throw PreconditionViolated("q_max must be >= 1");
  if (phi.empty()) throw PreconditionViolated("phi needs at least one step");
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (sgn(phi[i].value) <= 0)
      throw PreconditionViolated("phi values must be positive");
    if (i > 0 && (phi[i].up_to <= phi[i - 1].up_to ||
                  phi[i].value > phi[i - 1].value))
      throw PreconditionViolated(
          "phi steps must have increasing thresholds and non-increasing "
          "values");
  }
  const int n = l.cols;
  Integer cells = 1;
  for (int j = 0; j < n; ++j) {
    cells *= Integer(static_cast<long>(2 * q_max + 1));
    if (cells > static_cast<long>(kMaxBoxCells))
      throw PreconditionViolated("box too large to enumerate");
  }

  const auto phi_at = [&phi](long long x) -> const Rational& {
    for (const PhiStep& step : phi) {
      if (x <= step.up_to) return step.value;
    }
    return phi.back().value;
  };

  MarginResult result;
  bool have_min = false;
  IntVector q(static_cast<std::size_t>(n), -q_max);
  for (;;) {
    if (!is_zero_vector(q)) {
      const long long shell = inf_norm(q);
      Rational prod(1);
      for (int i = 0; i < l.rows; ++i) {
        Rational value(0);
        for (int j = 0; j < n; ++j) value += l.at(i, j) * rat(q[j]);
        prod *= dist_nearest_int(value);
        if (sgn(prod) == 0) break;
      }
      const Rational margin =
          rational_pow_int(rat(shell), n) * prod / phi_at(shell);
      if (!have_min || margin < result.margin) {
        result.margin = margin;
        result.argmin = q;
        have_min = true;
        if (sgn(margin) == 0) break;  // nothing can be smaller
      }
    }
    int spin = n - 1;
    while (spin >= 0) {
      if (++q[spin] <= q_max) break;
      q[spin] = -q_max;
      --spin;
    }
    if (spin < 0) break;
  }
  return result;
}

}  // namespace madmat
