#include "doctest.h"
#include "freqlab/rational.hpp"

using freqlab::Rational;

TEST_CASE("rational arithmetic reduces exactly") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(3, 4) - Rational(1, 4) == Rational(1, 2));
    CHECK(Rational(3, 4) * Rational(2, 3) == Rational(1, 2));
    CHECK(Rational(3, 4) / Rational(3, 2) == Rational(1, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(0).is_zero());
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::domain_error);
}

TEST_CASE("rational parse handles integers, fractions and decimals") {
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse("3/16") == Rational(3, 16));
    CHECK(Rational::parse("-3/16") == Rational(-3, 16));
    CHECK(Rational::parse("0.25") == Rational(1, 4));
    CHECK(Rational::parse("1.5") == Rational(3, 2));
    CHECK(Rational::parse("0") == Rational(0));
}

TEST_CASE("exact double conversion round-trips") {
    CHECK(Rational::from_double_exact(0.75) == Rational(3, 4));
    CHECK(Rational::from_double_exact(0.5) == Rational(1, 2));
    CHECK(Rational::from_double_exact(1.0) == Rational(1));
    CHECK(Rational::from_double_exact(0.0) == Rational(0));
    // 0.1 is not 1/10 in binary; the conversion must reproduce the double bit-exactly.
    CHECK(Rational::from_double_exact(0.1).to_double() == 0.1);
    CHECK(Rational::from_double_exact(-0.375) == Rational(-3, 8));
}

TEST_CASE("rational to_string") {
    CHECK(Rational(3, 4).to_string() == "3/4");
    CHECK(Rational(2).to_string() == "2");
    CHECK(Rational(0).to_string() == "0");
}
