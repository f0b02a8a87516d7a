#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rectcolor {

// Exact coordinates and arbitrary-precision integers. mpq_class values are
// kept canonical (reduced, positive denominator) by every helper below.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational midpoint(const Rational& a, const Rational& b) {
  Rational m = (a + b) / 2;
  return m;
}

// Always "num/den", including integers ("3/1").
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

// Accepts "num/den" or a bare integer. Throws DomainError on junk or a zero
// denominator.
Rational parse_rational(std::string_view text);
BigInt parse_bigint(std::string_view text);

}  // namespace rectcolor
