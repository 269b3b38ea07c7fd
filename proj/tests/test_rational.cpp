#include <doctest.h>

#include "wordperc/rational.hpp"

using namespace wordperc;

TEST_CASE("fraction and decimal formatting") {
  CHECK(to_fraction_string(Rational(5, 8)) == "5/8");
  CHECK(to_fraction_string(Rational(4, 2)) == "2");
  CHECK(to_decimal_string(Rational(5, 8)) == "0.625000000000");
  CHECK(to_decimal_string(Rational(2, 3), 4) == "0.6667");
  CHECK(to_decimal_string(Rational(-2, 3), 4) == "-0.6667");
}

TEST_CASE("parse_rational") {
  CHECK(parse_rational("1/2") == Rational(1, 2));
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("pow and binomial") {
  CHECK(pow(Rational(3, 4), 3) == Rational(27, 64));
  CHECK(pow(Rational(7, 5), 0) == 1);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(4, 5) == 0);
}
