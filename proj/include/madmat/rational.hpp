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

#ifndef MADMAT_RATIONAL_HPP_
#define MADMAT_RATIONAL_HPP_

// Exact rational scalars and small integer vectors.
//
// Every scalar the library touches (matrix entries, cube endpoints, shifts,
// thresholds, certified bounds) is an arbitrary-precision rational.  Rational
// values are kept canonical: lowest terms, positive denominator.  GMP's
// mpq_class maintains canonical form under arithmetic provided its inputs are
// canonical, so all construction from raw integer pairs or strings must go
// through the helpers below, which canonicalize or reject.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace madmat {

using Rational = mpq_class;
using Integer = mpz_class;

// Integer vector q; used both as lattice points (nonzero) and as p-offsets.
using IntVector = std::vector<long long>;

// Base class for every error the library throws deliberately.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input (non-canonical rational, bad JSON field, ...).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

// An operation received an argument outside its stated domain.
class PreconditionViolated : public Error {
 public:
  explicit PreconditionViolated(const std::string& what) : Error(what) {}
};

// Builds a canonical rational from an integer pair; rejects zero denominators.
Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(long long num, long long den);

// Parses the canonical on-disk form: "num" or "num/den" where num is an
// optionally signed decimal integer without leading zeros, den ≥ 2 is an
// unsigned decimal integer without leading zeros, and gcd(num, den) = 1.
// Anything else (decimals, "3/0", "2/4", "-0", "007") raises ParseError, so
// that parse ∘ format is the identity on canonical strings.
Rational parse_rational(const std::string& text);

// Formats the canonical on-disk form: "num" when den = 1, else "num/den".
std::string format_rational(const Rational& x);

// Exact floor/ceil/truncation helpers.
Integer rational_floor(const Rational& x);
Integer rational_ceil(const Rational& x);

// Exact power with integer exponent; requires x ≠ 0 when e < 0.
Rational rational_pow_int(const Rational& x, long exponent);

// Convenience: Integer → long long with a range check (used for counts and
// enumeration bounds that are known to be small).
long long to_long_long_checked(const Integer& z, const char* what);

// |q|_∞; zero vectors give 0.
long long inf_norm(const IntVector& q);

// True if every entry is zero.
bool is_zero_vector(const IntVector& q);

// Lexicographic comparison of equal-length integer vectors.
bool lex_less(const IntVector& a, const IntVector& b);

}  // namespace madmat

#endif  // MADMAT_RATIONAL_HPP_
