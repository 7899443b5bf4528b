#pragma once

/// Exact rational scalars.
///
/// All certificate-grade arithmetic in this library runs over arbitrary
/// precision rationals so that verdicts are free of round-off disputes.
/// Values are always stored in lowest terms with a positive denominator;
/// that invariant is maintained by the backing type on every operation.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "conelyap/errors.hpp"

namespace conelyap {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Builds num/den, normalizing the sign into the numerator.
inline Rational make_rational(Int num, Int den) {
    if (den == 0) {
        throw ParseError("rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

/// Parses "p", "-p", or "p/q". Rejects empty input, junk characters and q = 0.
inline Rational parse_rational(std::string_view text) {
    const std::string s(text);
    const auto bad = [&](const char* why) -> ParseError {
        return ParseError("bad rational '" + s + "': " + why);
    };
    const auto slash = s.find('/');
    const std::string num_part = s.substr(0, slash);
    const std::string den_part = slash == std::string::npos ? "" : s.substr(slash + 1);

    const auto is_integer = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i) {
            if (t[i] < '0' || t[i] > '9') return false;
        }
        return true;
    };

    if (!is_integer(num_part)) throw bad("numerator is not an integer");
    if (slash != std::string::npos && !is_integer(den_part)) throw bad("denominator is not an integer");

    Int num(num_part);
    Int den = slash == std::string::npos ? Int(1) : Int(den_part);
    if (den == 0) throw bad("zero denominator");
    return make_rational(std::move(num), std::move(den));
}

/// Serializes as "p" or "p/q"; round-trips through parse_rational.
inline std::string to_string(const Rational& q) {
    return q.str();
}

inline double to_double(const Rational& q) {
    return q.convert_to<double>();
}

inline int sign(const Rational& q) {
    if (q > 0) return 1;
    if (q < 0) return -1;
    return 0;
}

} // namespace conelyap
