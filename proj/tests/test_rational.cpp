#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tight/rational.hpp"

using namespace tight;

TEST_CASE("rationals are canonical") {
    Rational a(6, 4);
    CHECK(a.num() == 3);
    CHECK(a.den() == 2);
    Rational b(-6, -4);
    CHECK(b == a);
    Rational c(6, -4);
    CHECK(c.num() == -3);
    CHECK(c.den() == 2);
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("arithmetic") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(-a == Rational(-1, 3));
    CHECK(a < Rational(1, 2));
    CHECK_THROWS_AS(a / Rational(0), std::invalid_argument);
}

TEST_CASE("integrality and rendering") {
    CHECK(Rational(4, 2).is_integer());
    CHECK(Rational(4, 2).to_integer() == 2);
    CHECK_FALSE(Rational(1, 2).is_integer());
    CHECK(Rational(0).str() == "0/1");
    CHECK(Rational(-9, 10).str() == "-9/10");
    CHECK(rational_from_string("-9/10") == Rational(-9, 10));
    CHECK(rational_from_string("7") == Rational(7));
}

TEST_CASE("binomial and pow2") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(16, 8) == 12870);
    CHECK(binomial(4, 7) == 0);
    CHECK(pow2(10) == 1024);
    CHECK(pow2(70) == Integer("1180591620717411303424"));
}
