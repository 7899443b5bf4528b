#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "conelyap/charpoly.hpp"
#include "conelyap/spectral.hpp"

using namespace conelyap;

namespace {

RationalMatrix mat2(int a, int b, int c, int d) {
    return RationalMatrix{{Rational(a), Rational(b)}, {Rational(c), Rational(d)}};
}

} // namespace

TEST_CASE("characteristic polynomial via Faddeev-LeVerrier") {
    // trace -1, determinant 1
    CHECK(char_poly(mat2(-2, -3, 1, 1)).coeffs ==
          std::vector<Rational>{Rational(1), Rational(1), Rational(1)});
    CHECK(char_poly(RationalMatrix(2, 2)).coeffs ==
          std::vector<Rational>{Rational(1), Rational(0), Rational(0)});
    CHECK(char_poly(mat2(1, 1, -1, 0)).coeffs ==
          std::vector<Rational>{Rational(1), Rational(-1), Rational(1)});
    CHECK_THROWS_AS(char_poly(RationalMatrix(2, 3)), DimensionError);

    // constant term is (-1)^n det(A)
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> e(-3, 3);
    for (int k = 0; k < 40; ++k) {
        RationalMatrix m(4, 4);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) m(i, j) = make_rational(e(rng), 1 + (k % 3));
        }
        const CharPoly p = char_poly(m);
        REQUIRE(p.coeffs.size() == 5);
        CHECK(p.coeffs[0] == 1);
        CHECK(p.coeffs[4] == determinant(m));
        CHECK(p.coeffs[1] == -m.trace());
    }
}

TEST_CASE("routh_hurwitz on quadratics") {
    CharPoly stable{{Rational(1), Rational(1), Rational(1)}};
    CHECK(routh_hurwitz(stable) == StabilityVerdict::Hurwitz);

    CharPoly unstable{{Rational(1), Rational(-1), Rational(1)}};
    CHECK(routh_hurwitz(unstable) == StabilityVerdict::NotHurwitz);

    // A - 2D for the introductory pair at d = 1/16: s^2 + (3+1/8)s - 1/2
    CharPoly coupled{{Rational(1), Rational(3) + make_rational(2, 16), Rational(-1) + make_rational(8, 16)}};
    CHECK(routh_hurwitz(coupled) == StabilityVerdict::NotHurwitz);

    // zero constant term: root at the origin
    CharPoly marginal{{Rational(1), make_rational(13, 4), Rational(0)}};
    CHECK(routh_hurwitz(marginal) == StabilityVerdict::Marginal);

    // pure oscillator s^2 + 1: zero pivot in the s^1 row
    CharPoly osc{{Rational(1), Rational(0), Rational(1)}};
    CHECK(routh_hurwitz(osc) == StabilityVerdict::Marginal);

    CHECK(routh_hurwitz(CharPoly{{Rational(1)}}) == StabilityVerdict::Hurwitz);
    CHECK(routh_hurwitz(CharPoly{{Rational(1), Rational(2)}}) == StabilityVerdict::Hurwitz);
    CHECK(routh_hurwitz(CharPoly{{Rational(1), Rational(-2)}}) == StabilityVerdict::NotHurwitz);
    CHECK_THROWS_AS(routh_hurwitz(CharPoly{{Rational(2), Rational(1)}}), ContractError);
}

TEST_CASE("routh_hurwitz agrees with the floating spectral abscissa") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> num(-20, 20);
    std::uniform_int_distribution<int> den(1, 4);
    int checked = 0, skipped = 0;
    while (checked < 400) {
        RationalMatrix m(3, 3);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) m(i, j) = make_rational(num(rng), 4 * den(rng));
        }
        const auto ev = eigenvalues(m);
        // keep only spectra clearly separated from the imaginary axis
        bool separated = true;
        for (const auto& l : ev) separated = separated && std::abs(l.real()) > 1e-3;
        if (!separated) {
            ++skipped;
            continue;
        }
        const double abscissa = ev.front().real();
        const auto verdict = routh_hurwitz(char_poly(m));
        if (verdict == StabilityVerdict::Marginal) {
            // degenerate table (zero pivot), a distinct outcome rather than a verdict
            ++skipped;
            continue;
        }
        CHECK((verdict == StabilityVerdict::Hurwitz) == (abscissa < -1e-7));
        ++checked;
    }
    CHECK(skipped < 200);
}
