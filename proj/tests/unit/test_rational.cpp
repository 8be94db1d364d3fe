#include <doctest.h>

#include <limits>

#include "levy/errors.hpp"
#include "levy/rational.hpp"

using namespace levy;

TEST_CASE("rational reduces and normalizes sign") {
    const Rational r(6, -8);
    CHECK(r.num() == -3);
    CHECK(r.den() == 4);
    CHECK(Rational(4, 2).is_integer());
    CHECK(Rational(0).is_nonpositive_integer());
    CHECK(Rational(-3).is_nonpositive_integer());
    CHECK_FALSE(Rational(-1, 2).is_nonpositive_integer());
    CHECK_THROWS_AS(Rational(1, 0), DomainError);
}

TEST_CASE("rational arithmetic is exact") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 4) - Rational(3, 4) == Rational(-1, 2));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(3, 8).str() == "3/8");
}

TEST_CASE("rational overflow throws") {
    const Rational big(std::numeric_limits<std::int64_t>::max() / 2);
    CHECK_THROWS_AS(big * Rational(4), DomainError);
}

TEST_CASE("rational conversion rounds once") {
    CHECK(Rational(1, 3).to_double() == 1.0 / 3.0);
    CHECK(double(Rational(1, 3).to_quad()) == 1.0 / 3.0);
}

TEST_CASE("perfect powers and roots") {
    CHECK(checked_pow(2, 10) == 1024);
    CHECK_FALSE(checked_pow(10, 30).has_value());
    CHECK(exact_root(64, 3) == 4);
    CHECK(exact_root(64, 6) == 2);
    CHECK_FALSE(exact_root(63, 2).has_value());
}
