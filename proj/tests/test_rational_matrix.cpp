#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "conelyap/matrix.hpp"

using namespace conelyap;

TEST_CASE("rationals stay in lowest terms with positive denominator") {
    Rational a = make_rational(4, -6);
    CHECK(numerator(a) == -2);
    CHECK(denominator(a) == 3);

    Rational b = parse_rational("3/6");
    CHECK(b == make_rational(1, 2));
    CHECK(to_string(b) == "1/2");
    CHECK(to_string(parse_rational("-7")) == "-7");

    CHECK(parse_rational("1/3") + parse_rational("1/6") == make_rational(1, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
    CHECK_THROWS_AS(parse_rational("a/2"), ParseError);
}

TEST_CASE("rational arithmetic is exact on random operands") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> num(-50, 50), den(1, 30);
    for (int k = 0; k < 200; ++k) {
        Rational a = make_rational(num(rng), den(rng));
        Rational b = make_rational(num(rng), den(rng));
        Rational s = a + b;
        CHECK(s - b == a);
        CHECK(denominator(s) > 0);
        CHECK(gcd(Int(abs(numerator(s))), Int(denominator(s))) == (numerator(s) == 0 ? denominator(s) : 1));
    }
}

TEST_CASE("matrix arithmetic and exact equality") {
    RationalMatrix a{{Rational(1), Rational(2)}, {Rational(3), Rational(4)}};
    RationalMatrix b = RationalMatrix::identity(2);
    CHECK(a * b == a);
    CHECK((a - a) == RationalMatrix(2, 2));
    CHECK(a.transpose().transpose() == a);
    CHECK(a.trace() == 5);

    RationalVector v{Rational(1), Rational(-1)};
    RationalVector av = a * v;
    CHECK(av == RationalVector{Rational(-1), Rational(-1)});

    CHECK_THROWS_AS(a * RationalMatrix(3, 3), DimensionError);
    CHECK_THROWS_AS(RationalMatrix(2, 3).trace(), DimensionError);
}

TEST_CASE("determinant, inverse, and rank are exact") {
    RationalMatrix a{{Rational(-2), Rational(-3)}, {Rational(1), Rational(1)}};
    CHECK(determinant(a) == 1);

    auto inv = inverse(a);
    REQUIRE(inv.has_value());
    CHECK(a * *inv == RationalMatrix::identity(2));

    RationalMatrix sing{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
    CHECK(determinant(sing) == 0);
    CHECK_FALSE(inverse(sing).has_value());
    CHECK(rank(sing) == 1);
    CHECK(rank(a) == 2);

    std::mt19937 rng(7);
    std::uniform_int_distribution<int> e(-4, 4);
    for (int k = 0; k < 50; ++k) {
        RationalMatrix m(3, 3);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) m(i, j) = Rational(e(rng));
        }
        const Rational d = determinant(m);
        if (d != 0) {
            auto mi = inverse(m);
            REQUIRE(mi.has_value());
            CHECK(m * *mi == RationalMatrix::identity(3));
            CHECK(determinant(*mi) * d == 1);
        } else {
            CHECK(rank(m) < 3);
        }
    }
}
