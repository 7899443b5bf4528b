#pragma once

/// Exact characteristic polynomials and the Routh-Hurwitz test.
///
/// Hurwitz verdicts are decided entirely in rational arithmetic so a
/// stability certificate can never be an artifact of floating error.
/// Degenerate Routh tables (a zero in the first column) are reported as a
/// third verdict, never coerced to stable/unstable: boundary instances sit
/// exactly there and deserve to be surfaced as such.

#include <cstddef>
#include <optional>
#include <vector>

#include "conelyap/matrix.hpp"

namespace conelyap {

/// det(sI - A) stored degree-descending; coeffs[0] is exactly 1.
struct CharPoly {
    std::vector<Rational> coeffs;

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

    Rational eval(const Rational& s) const {
        Rational acc(0);
        for (const auto& c : coeffs) acc = acc * s + c;
        return acc;
    }

    bool operator==(const CharPoly& o) const { return coeffs == o.coeffs; }
};

/// Faddeev-LeVerrier recurrence; exact for rational input.
inline CharPoly char_poly(const RationalMatrix& a) {
    a.require_square("char_poly");
    const std::size_t n = a.rows();
    CharPoly p;
    p.coeffs.assign(n + 1, Rational(0));
    p.coeffs[0] = 1;
    if (n == 0) return p;

    RationalMatrix m = a;
    p.coeffs[1] = -m.trace();
    for (std::size_t k = 2; k <= n; ++k) {
        RationalMatrix shifted = m;
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) += p.coeffs[k - 1];
        m = a * shifted;
        p.coeffs[k] = -m.trace() / Rational(static_cast<long>(k));
    }
    return p;
}

enum class StabilityVerdict {
    Hurwitz,    ///< every root strictly in the open left half plane
    NotHurwitz, ///< at least one root with positive real part
    Marginal,   ///< degenerate Routh table: root on the imaginary axis, or undecidable by this table
};

/// Routh array over exact rationals. Returns Marginal whenever a zero
/// appears in the first column before a sign change settles the question.
inline StabilityVerdict routh_hurwitz(const CharPoly& p) {
    if (p.coeffs.empty() || p.coeffs[0] != 1) {
        throw ContractError("routh_hurwitz expects a monic polynomial");
    }
    const std::size_t n = p.degree();
    if (n == 0) return StabilityVerdict::Hurwitz;

    const std::size_t width = n / 2 + 1;
    std::vector<RationalVector> row(2, RationalVector(width, Rational(0)));
    for (std::size_t j = 0; j < width; ++j) {
        if (2 * j < n + 1) row[0][j] = p.coeffs[2 * j];
        if (2 * j + 1 < n + 1) row[1][j] = p.coeffs[2 * j + 1];
    }

    bool negative_seen = false;
    RationalVector prev = row[0];
    RationalVector cur = row[1];

    const auto classify_entry = [&](const Rational& lead) -> std::optional<StabilityVerdict> {
        if (lead < 0) negative_seen = true;
        if (lead == 0) {
            return negative_seen ? StabilityVerdict::NotHurwitz : StabilityVerdict::Marginal;
        }
        return std::nullopt;
    };

    // first-column entry of row 0 is the leading 1; scan from row 1 on
    for (std::size_t i = 1; i <= n; ++i) {
        if (auto v = classify_entry(cur[0])) return *v;
        if (i == n) break;
        RationalVector next(width, Rational(0));
        for (std::size_t j = 0; j + 1 < width; ++j) {
            next[j] = (cur[0] * prev[j + 1] - prev[0] * cur[j + 1]) / cur[0];
        }
        prev = std::move(cur);
        cur = std::move(next);
    }
    return negative_seen ? StabilityVerdict::NotHurwitz : StabilityVerdict::Hurwitz;
}

inline StabilityVerdict routh_hurwitz(const RationalMatrix& a) {
    return routh_hurwitz(char_poly(a));
}

inline const char* to_string(StabilityVerdict v) {
    switch (v) {
        case StabilityVerdict::Hurwitz: return "hurwitz";
        case StabilityVerdict::NotHurwitz: return "not-hurwitz";
        case StabilityVerdict::Marginal: return "marginal";
    }
    return "?";
}

} // namespace conelyap
