#pragma once

/// Quasi-monotonicity tests per cone class.
///
/// Orthant: exact off-diagonal sign scan (the Metzler criterion).
///
/// Polyhedral: the boundary condition reduces to finitely many exact
/// checks. Any boundary point with a vanishing supporting functional is a
/// conic combination of generators that are themselves incident to the
/// active facets, so by bilinearity it suffices that for every generator k
/// and facet functional f with f(k) = 0, also f(Ak) >= 0.
///
/// Ice cream: the criterion asks for some alpha making QA + A^T Q + alpha Q
/// negative semidefinite, Q = diag(1, ..., 1, -1). The largest eigenvalue of
/// that pencil is convex in alpha, so a golden-section search over a
/// bracket that provably contains the minimizer decides it; the boundary
/// |max_eig| <= 1e-9 counts as QM and is flagged marginal.

#include <cmath>
#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "conelyap/cones.hpp"
#include "conelyap/spectral.hpp"

namespace conelyap {

struct WolkowiczCertificate {
    double alpha;
    double max_eig;
};

struct IncidenceViolation {
    std::size_t generator; ///< index into the cone's generator list
    std::size_t facet;     ///< index into the dual functional list
    Rational value;        ///< f(A k) < 0, exact
};

struct BoundaryViolation {
    RealVector x;  ///< boundary sample
    double value;  ///< positive outward rate found there
};

struct QMReport {
    bool verdict = false;
    bool marginal = false;
    std::vector<IncidenceViolation> violations;
    std::vector<BoundaryViolation> boundary_violations;
    std::optional<WolkowiczCertificate> certificate;
};

namespace detail {

inline RealMatrix wolkowicz_symmetric_part(const RationalMatrix& a) {
    const std::size_t n = a.rows();
    RationalMatrix qa = a;
    for (std::size_t j = 0; j < n; ++j) qa(n - 1, j) = -qa(n - 1, j);
    const RationalMatrix s = qa + qa.transpose();
    return to_real(s);
}

inline double wolkowicz_eig(const RealMatrix& s, double alpha) {
    RealMatrix m = s;
    const std::size_t n = s.rows();
    for (std::size_t i = 0; i + 1 < n; ++i) m(i, i) += alpha;
    m(n - 1, n - 1) -= alpha;
    return sym_eig_max(m);
}

/// Boundary samples of the ice cream cone at height 1: dense angles for
/// n = 3, a deterministic random sphere otherwise.
inline std::vector<RealVector> lorenz_boundary_samples(std::size_t n, std::size_t count) {
    std::vector<RealVector> pts;
    if (n == 3) {
        for (std::size_t k = 0; k < count; ++k) {
            const double th = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(count);
            pts.push_back({std::cos(th), std::sin(th), 1.0});
        }
        return pts;
    }
    std::mt19937 rng(911);
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::size_t k = 0; k < count; ++k) {
        RealVector x(n, 0.0);
        double nrm = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            x[i] = g(rng);
            nrm += x[i] * x[i];
        }
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) continue;
        for (std::size_t i = 0; i + 1 < n; ++i) x[i] /= nrm;
        x[n - 1] = 1.0;
        pts.push_back(std::move(x));
    }
    return pts;
}

/// Outward rate at a Lorenz boundary point: lambda_x(Ax) with the
/// supporting functional lambda_x = (-x_1, ..., -x_{n-1}, x_n); the QM
/// condition requires this to be nonnegative, i.e. x^T (QA + A^T Q) x <= 0.
inline double lorenz_outward_rate(const RealMatrix& sym, const RealVector& x) {
    double q = 0.0;
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) q += x[i] * sym(i, j) * x[j];
    }
    return q;
}

} // namespace detail

inline QMReport is_qm(const RationalMatrix& a, const ConeSpec& c) {
    a.require_square("is_qm");
    if (a.rows() != c.dim()) throw DimensionError("is_qm: matrix and cone dimensions differ");
    QMReport report;

    switch (c.kind()) {
        case ConeKind::Orthant: {
            for (std::size_t i = 0; i < a.rows(); ++i) {
                for (std::size_t j = 0; j < a.cols(); ++j) {
                    if (i != j && a(i, j) < 0) report.violations.push_back({j, i, a(i, j)});
                }
            }
            report.verdict = report.violations.empty();
            return report;
        }
        case ConeKind::Polyhedral: {
            const auto& gens = c.generators();
            const auto facets = c.dual().functionals();
            for (std::size_t g = 0; g < gens.size(); ++g) {
                const RationalVector image = a * gens[g];
                for (std::size_t f = 0; f < facets.size(); ++f) {
                    if (dot(facets[f], gens[g]) != 0) continue;
                    const Rational rate = dot(facets[f], image);
                    if (rate < 0) report.violations.push_back({g, f, rate});
                }
            }
            report.verdict = report.violations.empty();
            return report;
        }
        case ConeKind::IceCream: {
            const RealMatrix sym = detail::wolkowicz_symmetric_part(a);
            const double bracket = 2.0 * (1.0 + norm_inf(sym));
            // golden-section search on the convex alpha -> max eigenvalue map
            const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
            double lo = -bracket, hi = bracket;
            double m1 = hi - phi * (hi - lo), m2 = lo + phi * (hi - lo);
            double f1 = detail::wolkowicz_eig(sym, m1), f2 = detail::wolkowicz_eig(sym, m2);
            while (hi - lo > 1e-12) {
                if (f1 <= f2) {
                    hi = m2;
                    m2 = m1;
                    f2 = f1;
                    m1 = hi - phi * (hi - lo);
                    f1 = detail::wolkowicz_eig(sym, m1);
                } else {
                    lo = m1;
                    m1 = m2;
                    f1 = f2;
                    m2 = lo + phi * (hi - lo);
                    f2 = detail::wolkowicz_eig(sym, m2);
                }
            }
            const double alpha = f1 <= f2 ? m1 : m2;
            const double best = std::min(f1, f2);
            report.certificate = WolkowiczCertificate{alpha, best};
            report.verdict = best <= 1e-9;
            report.marginal = std::abs(best) <= 1e-9;
            if (!report.verdict) {
                // surface a concrete boundary witness of the failure
                BoundaryViolation worst{{}, -std::numeric_limits<double>::infinity()};
                for (const auto& x : detail::lorenz_boundary_samples(c.dim(), 720)) {
                    const double q = detail::lorenz_outward_rate(sym, x);
                    if (q > worst.value) worst = {x, q};
                }
                report.boundary_violations.push_back(std::move(worst));
            }
            return report;
        }
    }
    throw ContractError("is_qm: unsupported cone kind");
}

struct FamilyQMReport {
    std::vector<QMReport> reports;
    bool family_verdict = true;
    bool vacuous = false; ///< empty family: vacuously QM, flagged
};

inline FamilyQMReport is_qm_family(const std::vector<RationalMatrix>& as, const ConeSpec& c) {
    FamilyQMReport out;
    out.vacuous = as.empty();
    for (const auto& a : as) {
        out.reports.push_back(is_qm(a, c));
        out.family_verdict = out.family_verdict && out.reports.back().verdict;
    }
    return out;
}

} // namespace conelyap
