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

#include "madmat/diophantine.hpp"

#include <algorithm>
#include <future>
#include <thread>

#include "madmat/certified.hpp"

namespace madmat {

namespace {

constexpr int kMaxDimension = 12;
// Upper limit on (2·max_prod+1)^n enumeration visits.
constexpr double kMaxEnumerationVisits = 2.5e8;

void enumerate_recursive(int n, long long max_prod, IntVector& q, int index,
                         long long partial_prod, bool any_nonzero,
                         const std::function<void(const IntVector&)>& visit) {
  if (index == n) {
    if (any_nonzero) visit(q);
    return;
  }
  for (long long v = -max_prod; v <= max_prod; ++v) {
    const long long mag = v < 0 ? -v : v;
    const long long next_prod = partial_prod * std::max<long long>(1, mag);
    if (next_prod > max_prod) {
      if (v < 0) {
        // Jump from the negative tail straight to the feasible middle.
        v = -(max_prod / std::max<long long>(1, partial_prod)) - 1;
        continue;
      }
      break;  // products only grow for v beyond the feasible middle
    }
    q[index] = v;
    enumerate_recursive(n, max_prod, q, index + 1, next_prod, any_nonzero || v != 0,
                        visit);
  }
  q[index] = 0;
}

struct BestTracker {
  bool has = false;
  Rational min_lower;
  IntVector argmin;

  void offer(const Rational& lower, const IntVector& q) {
    if (!has || lower < min_lower ||
        (lower == min_lower && lex_less(q, argmin))) {
      has = true;
      min_lower = lower;
      argmin = q;
    }
  }
};

}  // namespace

Rational dist_nearest_int(const Rational& x) {
  const Rational fractional = x - Rational(rational_floor(x));
  const Rational complement = 1 - fractional;
  return fractional < complement ? fractional : complement;
}

long long prod_plus(const IntVector& q) {
  Integer prod = 1;
  for (long long v : q) {
    prod *= Integer(static_cast<long>(v < 0 ? -v : v > 0 ? v : 1));
  }
  return to_long_long_checked(prod, "prod_plus");
}

Rational row_form(const RationalMatrix& a, const std::vector<Rational>& gamma,
                  int i, const IntVector& q) {
  Rational sum = gamma.empty() ? Rational(0) : gamma[i];
  for (int j = 0; j < a.cols; ++j) {
    if (q[j] != 0) sum += a.at(i, j) * static_cast<long>(q[j]);
  }
  return sum;
}

LogBounds mad_form_bounds(const RationalMatrix& a,
                          const std::vector<Rational>& gamma,
                          const IntVector& q, const Rational& precision) {
  if (is_zero_vector(q)) {
    throw PreconditionViolated("mad_form_bounds requires q != 0");
  }
  Rational distances = 1;
  for (int i = 0; i < a.rows; ++i) {
    distances *= dist_nearest_int(row_form(a, gamma, i, q));
  }
  const long long height = prod_plus(q);
  const Rational base = Rational(static_cast<long>(height)) * distances;
  if (sgn(base) == 0 || height <= 2) {
    // log*(1) = log*(2) = 1 exactly, so the form value is the rational base.
    LogBounds result = LogBounds::exact(base);
    result.precision = precision;
    return result;
  }
  const long exponent = a.rows + a.cols - 1;
  Rational star_precision = precision;
  for (int attempt = 0; attempt < 300; ++attempt) {
    const LogBounds star =
        log_star_bounds(Rational(static_cast<long>(height)), star_precision);
    LogBounds result = bounds_scale(base, bounds_pow_int(star, exponent));
    if (result.width() <= precision) {
      result.precision = precision;
      return result;
    }
    star_precision /= 8;
  }
  throw Error("mad_form_bounds failed to reach the requested width");
}

void for_each_with_prod_bound(
    int n, long long max_prod,
    const std::function<void(const IntVector&)>& visit) {
  if (n < 1 || n > kMaxDimension) {
    throw PreconditionViolated("dimension out of supported range");
  }
  if (max_prod < 1) return;
  double visits = 1;
  for (int i = 0; i < n; ++i) visits *= 2.0 * static_cast<double>(max_prod) + 1;
  if (visits > kMaxEnumerationVisits) {
    throw PreconditionViolated("enumeration box too large; lower the budget");
  }
  IntVector q(n, 0);
  enumerate_recursive(n, max_prod, q, 0, 1, false, visit);
}

std::vector<IntVector> enumerate_with_prod_bound(int n, long long max_prod) {
  std::vector<IntVector> result;
  for_each_with_prod_bound(n, max_prod,
                           [&result](const IntVector& q) { result.push_back(q); });
  return result;
}

ScanResult scan_min_form(const RationalMatrix& a,
                         const std::vector<Rational>& gamma, long long q_budget,
                         const Rational& precision, int threads) {
  if (q_budget < 1) throw PreconditionViolated("q_budget must be >= 1");
  if (threads < 1) threads = 1;
  const std::vector<IntVector> lattice =
      enumerate_with_prod_bound(a.cols, q_budget);

  const auto scan_range = [&](std::size_t begin, std::size_t end) {
    BestTracker best;
    for (std::size_t i = begin; i < end; ++i) {
      const LogBounds bounds = mad_form_bounds(a, gamma, lattice[i], precision);
      best.offer(bounds.lower, lattice[i]);
    }
    return best;
  };

  BestTracker merged;
  if (threads == 1 || lattice.size() < 1024) {
    merged = scan_range(0, lattice.size());
  } else {
    const std::size_t chunk = (lattice.size() + threads - 1) / threads;
    std::vector<std::future<BestTracker>> futures;
    for (std::size_t begin = 0; begin < lattice.size(); begin += chunk) {
      const std::size_t end = std::min(begin + chunk, lattice.size());
      futures.push_back(std::async(std::launch::async, scan_range, begin, end));
    }
    // Merge in chunk order with the same comparator: the outcome matches the
    // single-threaded pass exactly.
    for (auto& f : futures) {
      const BestTracker part = f.get();
      if (part.has) merged.offer(part.min_lower, part.argmin);
    }
  }
  if (!merged.has) {
    throw PreconditionViolated("empty scan range");
  }
  ScanResult result;
  result.min_lower = merged.min_lower;
  result.argmin = merged.argmin;
  result.scanned = static_cast<long long>(lattice.size());
  return result;
}

}  // namespace madmat
