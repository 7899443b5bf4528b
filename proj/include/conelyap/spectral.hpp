#pragma once

/// Floating-point spectral kernels: general eigenvalues, extremal symmetric
/// eigenvalue (cyclic Jacobi), and the matrix exponential (scaling and
/// squaring). These are advisory next to the exact Routh verdicts; accuracy
/// contracts are noted per function.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "conelyap/matrix.hpp"

namespace conelyap {

inline Eigen::MatrixXd to_eigen(const RealMatrix& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    }
    return e;
}

/// All n eigenvalues via Hessenberg reduction + shifted QR, sorted by real
/// part descending (imaginary part descending breaks ties). Relative
/// accuracy ~1e-9 for well-separated spectra.
inline std::vector<std::complex<double>> eigenvalues(const RationalMatrix& a) {
    a.require_square("eigenvalues");
    if (a.rows() == 0) return {};
    Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(to_real(a)), /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> ev(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) ev[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigenvalue iteration did not converge (partial spectrum of size " +
                             std::to_string(ev.size()) + " discarded)");
    }
    std::sort(ev.begin(), ev.end(), [](const auto& x, const auto& y) {
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    });
    return ev;
}

inline double spectral_abscissa(const RationalMatrix& a) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& ev : eigenvalues(a)) best = std::max(best, ev.real());
    return best;
}

namespace detail {

/// Cyclic Jacobi on a symmetric matrix held in s; returns the diagonal after
/// convergence. Absolute accuracy near machine precision for n <= 50.
inline std::vector<double> jacobi_diagonal(RealMatrix s) {
    const std::size_t n = s.rows();
    if (n == 0) return {};
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(s(i, j)));
    }
    if (scale == 0.0) return std::vector<double>(n, 0.0);

    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
        }
        if (std::sqrt(off) <= 1e-15 * scale * static_cast<double>(n)) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = s(p, q);
                if (std::abs(apq) <= 1e-18 * scale) continue;
                const double theta = (s(q, q) - s(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double skp = s(k, p), skq = s(k, q);
                    s(k, p) = c * skp - sn * skq;
                    s(k, q) = sn * skp + c * skq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double spk = s(p, k), sqk = s(q, k);
                    s(p, k) = c * spk - sn * sqk;
                    s(q, k) = sn * spk + c * sqk;
                }
            }
        }
    }
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = s(i, i);
    return d;
}

} // namespace detail

/// Largest eigenvalue of a symmetric real matrix (cyclic Jacobi).
/// Symmetry of the input is the caller's responsibility here; use the
/// RationalMatrix overload for the exact check.
inline double sym_eig_max(const RealMatrix& s) {
    s.require_square("sym_eig_max");
    auto d = detail::jacobi_diagonal(s);
    double best = -std::numeric_limits<double>::infinity();
    for (double x : d) best = std::max(best, x);
    return s.rows() == 0 ? 0.0 : best;
}

/// Largest eigenvalue to absolute accuracy ~1e-10; the input must be
/// exactly symmetric entrywise.
inline double sym_eig_max(const RationalMatrix& s) {
    s.require_square("sym_eig_max");
    for (std::size_t i = 0; i < s.rows(); ++i) {
        for (std::size_t j = i + 1; j < s.cols(); ++j) {
            if (s(i, j) != s(j, i)) {
                throw ContractError("sym_eig_max requires an exactly symmetric matrix");
            }
        }
    }
    return sym_eig_max(to_real(s));
}

/// e^{tA} by scaling and squaring with a truncated series. Relative entry
/// accuracy ~1e-12 for ||tA||_inf <= 50; larger inputs are rejected.
inline RealMatrix mat_exp(const RationalMatrix& a, double t) {
    a.require_square("mat_exp");
    if (!std::isfinite(t)) throw RangeError("mat_exp requires finite t");
    const std::size_t n = a.rows();
    RealMatrix b = to_real(a);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) b(i, j) *= t;
    }
    const double nb = norm_inf(b);
    if (nb > 50.0) {
        throw RangeError("mat_exp: ||tA||_inf = " + std::to_string(nb) + " exceeds the supported range 50");
    }

    int squarings = 0;
    if (nb > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(nb))) + 1;
        const double f = std::ldexp(1.0, -squarings);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) b(i, j) *= f;
        }
    }

    RealMatrix result = RealMatrix::identity(n);
    RealMatrix term = RealMatrix::identity(n);
    for (int k = 1; k <= 40; ++k) {
        term = term * b;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) term(i, j) /= static_cast<double>(k);
        }
        result = result + term;
        if (norm_inf(term) <= 1e-18 * std::max(1.0, norm_inf(result))) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

} // namespace conelyap
