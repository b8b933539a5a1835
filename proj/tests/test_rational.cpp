#include "kdvheat/rational.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace kdvheat;

TEST_CASE("factorial and integer binomial") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
    CHECK(factorial(20) == BigInt("2432902008176640000"));
    CHECK(binomial(6, 2) == 15);
    CHECK(binomial(6, 0) == 1);
    CHECK(binomial(6, 6) == 1);
    CHECK(binomial(6, 7) == 0);
    CHECK(binomial(6, -1) == 0);
}

TEST_CASE("half-integer binomial reference values") {
    CHECK(half_integer_binomial(3, 3, 1) == 1);
    CHECK(half_integer_binomial(3, 1, 2) == 6);
    CHECK(half_integer_binomial(3, 0, 1) == Rational(35, 16));
    CHECK(half_integer_binomial(2, 1, 1) == Rational(5, 2));
    // integer-shift consistency: for even dim the value is an ordinary binomial
    CHECK(half_integer_binomial(4, 1, 2) == binomial(5, 2));
    CHECK(half_integer_binomial(5, 2, 4) == binomial(7, 4));
}

TEST_CASE("half-integer binomial telescoping identity") {
    // binom(t+d/2, b+d/2) * binom(b+d/2, d/2) * (t-b)! * b! = binom(t+d/2, d/2) * t!
    std::mt19937 rng(20260822);
    std::uniform_int_distribution<int> top_dist(0, 30);
    std::uniform_int_distribution<int> dim_dist(1, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const int t = top_dist(rng);
        const int b = std::uniform_int_distribution<int>(0, t)(rng);
        const int d = dim_dist(rng);
        const Rational lhs = half_integer_binomial(t, b, d) * half_integer_binomial(b, 0, d) *
                             Rational(factorial(t - b) * factorial(b));
        const Rational rhs = half_integer_binomial(t, 0, d) * Rational(factorial(t));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("rational string round trip") {
    CHECK(rational_to_string(Rational(3, 4)) == "3/4");
    CHECK(rational_to_string(Rational(-5)) == "-5/1");
    CHECK(rational_from_string("3/4") == Rational(3, 4));
    CHECK(rational_from_string("-7/2") == Rational(-7, 2));
    CHECK(rational_from_string("12") == Rational(12));
    for (const Rational q : {Rational(0), Rational(22, 7), Rational(-528, 144)})
        CHECK(rational_from_string(rational_to_string(q)) == q);
    CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_string("abc"), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_string("1/2/3"), std::invalid_argument);
}

TEST_CASE("powers") {
    CHECK(power_of(4, 0) == 1);
    CHECK(power_of(4, 3) == 64);
    CHECK(power_of(-2, 5) == -32);
}

TEST_CASE("double conversion") {
    CHECK(to_double(Rational(1, 2)) == 0.5);
    CHECK(to_double(Rational(-3)) == -3.0);
}
