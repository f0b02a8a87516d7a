#include <doctest.h>

#include "rectcolor/errors.hpp"
#include "rectcolor/rational.hpp"

using namespace rectcolor;

TEST_CASE("rational strings always carry a denominator") {
  CHECK(to_string(Rational(3)) == "3/1");
  CHECK(to_string(make_rational(6, -4)) == "-3/2");
  CHECK(to_string(Rational(0)) == "0/1");
  CHECK(to_string(BigInt("123456789012345678901234567890")) == "123456789012345678901234567890");
}

TEST_CASE("parsing accepts fractions and integers and rejects junk") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("-3/2") == Rational(-3, 2));
  CHECK(parse_bigint("-42") == -42);
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("abc"), DomainError);
  CHECK_THROWS_AS(parse_rational(""), DomainError);
  CHECK_THROWS_AS(parse_bigint("1/2"), DomainError);
  CHECK_THROWS_AS(parse_bigint("12x"), DomainError);
}

TEST_CASE("round trip through strings") {
  for (long n = -20; n <= 20; ++n) {
    for (long d = 1; d <= 9; ++d) {
      const Rational q = make_rational(n, d);
      CHECK(parse_rational(to_string(q)) == q);
    }
  }
}

TEST_CASE("midpoint lies strictly between distinct values") {
  const Rational a(1, 3), b(1, 2);
  const Rational m = midpoint(a, b);
  CHECK(a < m);
  CHECK(m < b);
  CHECK(m == Rational(5, 12));
}
