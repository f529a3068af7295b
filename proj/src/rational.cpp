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

#include "madmat/rational.hpp"

#include <cstdlib>
#include <limits>

namespace madmat {

namespace {

// Canonical decimal integer: "0" or [1-9][0-9]*, with optional leading '-'
// (but never "-0").  Leading zeros are rejected so formatting round-trips.
bool is_canonical_integer(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && s[i] == '-') ++i;
  if (i >= s.size()) return false;
  if (s[i] == '0') return s.size() == i + 1 && i == 0;  // "0" only, no "-0"
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

bool is_canonical_unsigned(const std::string& s) {
  if (s.empty() || s[0] == '-') return false;
  return is_canonical_integer(s);
}

}  // namespace

Rational make_rational(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw ParseError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_rational(long long num, long long den) {
  return make_rational(Integer(static_cast<long>(num)),
                       Integer(static_cast<long>(den)));
}

Rational parse_rational(const std::string& text) {
  const std::size_t slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_canonical_integer(text)) {
      throw ParseError("malformed rational: '" + text + "'");
    }
    return Rational(Integer(text));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  if (!is_canonical_integer(num) || !is_canonical_unsigned(den)) {
    throw ParseError("malformed rational: '" + text + "'");
  }
  Integer d(den);
  if (d <= 1) {
    // "x/0" is meaningless and "x/1" must be written as "x".
    throw ParseError("non-canonical rational: '" + text + "'");
  }
  Integer n(num);
  Integer g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (g != 1) throw ParseError("non-canonical rational: '" + text + "'");
  return make_rational(n, d);
}

std::string format_rational(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Integer rational_floor(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

Integer rational_ceil(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

Rational rational_pow_int(const Rational& x, long exponent) {
  if (exponent == 0) return Rational(1);
  const bool invert = exponent < 0;
  if (invert && sgn(x) == 0) {
    throw PreconditionViolated("zero base with negative exponent");
  }
  const unsigned long e =
      invert ? static_cast<unsigned long>(-(exponent + 1)) + 1UL
             : static_cast<unsigned long>(exponent);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), x.get_den().get_mpz_t(), e);
  return invert ? make_rational(den, num) : make_rational(num, den);
}

long long to_long_long_checked(const Integer& z, const char* what) {
  if (!z.fits_slong_p()) {
    throw PreconditionViolated(std::string(what) + " out of range");
  }
  return z.get_si();
}

long long inf_norm(const IntVector& q) {
  long long best = 0;
  for (long long v : q) {
    const long long a = v < 0 ? -v : v;
    if (a > best) best = a;
  }
  return best;
}

bool is_zero_vector(const IntVector& q) {
  for (long long v : q) {
    if (v != 0) return false;
  }
  return true;
}

bool lex_less(const IntVector& a, const IntVector& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

}  // namespace madmat
