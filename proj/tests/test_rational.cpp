#include <doctest.h>

#include <sstream>

#include "ptlab/rational.hpp"

using ptlab::BigInt;
using ptlab::Rational;

TEST_SUITE("rational") {
  TEST_CASE("canonical reduced form") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, 4) == Rational(-1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(6, 3).is_integer());
    CHECK(Rational(5, 16).den() == 16);
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  }

  TEST_CASE("arithmetic is exact") {
    const Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(-a == Rational(-1, 3));
    CHECK(pow(Rational(1, 2), 4) == Rational(1, 16));
    CHECK(abs(Rational(-5, 7)) == Rational(5, 7));
    CHECK_THROWS_AS(a / Rational(0), std::invalid_argument);
  }

  TEST_CASE("ordering") {
    CHECK(Rational(1, 4) < Rational(5, 16));
    CHECK(Rational(5, 16) < Rational(1, 3));
    CHECK(ptlab::min(Rational(1, 3), Rational(1, 4)) == Rational(1, 4));
    CHECK(ptlab::max(Rational(1, 3), Rational(1, 4)) == Rational(1, 3));
  }

  TEST_CASE("parse and format") {
    CHECK(Rational::parse("5/16") == Rational(5, 16));
    CHECK(Rational::parse("-3") == Rational(-3));
    CHECK(Rational::parse("4/8") == Rational(1, 2));
    CHECK(Rational(5, 16).str() == "5/16");
    CHECK(Rational(-7).str() == "-7");
    CHECK(Rational(4, 2).str() == "2");
    CHECK_THROWS_AS(Rational::parse("x/y"), std::invalid_argument);
    std::ostringstream os;
    os << Rational(11, 16);
    CHECK(os.str() == "11/16");
  }

  TEST_CASE("from_double is the exact binary value") {
    CHECK(Rational::from_double(0.5) == Rational(1, 2));
    CHECK(Rational::from_double(0.0625) == Rational(1, 16));
    CHECK(Rational::from_double(0.1) != Rational(1, 10));  // 0.1 is not a binary fraction
  }

  TEST_CASE("combinatorial helpers") {
    CHECK(ptlab::binomial(4, 2) == 6);
    CHECK(ptlab::binomial(60, 4) == 487635);
    CHECK(ptlab::binomial(3, 5) == 0);
    CHECK(ptlab::falling_factorial(5, 2) == 20);
    CHECK(ptlab::falling_factorial(4, 4) == 24);
    CHECK(ptlab::falling_factorial(3, 4) == 0);
    CHECK(ptlab::factorial(7) == 5040);
    CHECK(ptlab::lcm(BigInt(12), BigInt(16)) == 48);
  }
}
