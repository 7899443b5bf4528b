#pragma once

/// Existence and construction of linear Lyapunov functions on cones.
///
/// Over a finitely generated proper cone the strict conditions
///   v(k) > 0 and v(A k) < 0 on all generators k
/// are scale-free, so they are encoded as the closed margins v(k) >= 1 and
/// v(A k) <= -1 and decided by exact LP; any feasible point is a strict
/// certificate and any strict certificate scales into the margins.
///
/// The three-condition characterization (kernel, pointed image sum,
/// trivial intersection) and the kernel sufficient condition are computed
/// independently of the LP; their agreement with LP existence is enforced
/// as an internal consistency invariant rather than assumed.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "conelyap/charpoly.hpp"
#include "conelyap/cones.hpp"
#include "conelyap/monotone.hpp"

namespace conelyap {

/// A dual vector v acting as x -> v . x; certificate candidates are nonzero.
struct LinearFunctional {
    RationalVector v;
};

namespace detail {

inline void require_polyhedral_proper(const ConeSpec& c, const char* who) {
    if (!c.is_polyhedral_kind()) {
        throw ContractError(std::string(who) + " requires a finitely generated cone");
    }
    if (!is_solid(c) || !is_pointed(c)) {
        throw ContractError(std::string(who) + " requires a proper (solid and pointed) cone");
    }
}

/// LP search without the quasi-monotonicity precondition check.
inline std::optional<LinearFunctional> find_cllf_unchecked(const std::vector<RationalMatrix>& as,
                                                           const ConeSpec& c) {
    const std::size_t n = c.dim();
    const auto& gens = c.generators();
    std::vector<LinearConstraint> cons;
    for (const auto& k : gens) cons.push_back(make_ge(k, Rational(1)));
    for (const auto& a : as) {
        for (const auto& k : gens) cons.push_back(make_le(a * k, Rational(-1)));
    }
    auto out = solve_feasibility(cons, n, {});
    if (out.status != LPStatus::Feasible) return std::nullopt;
    return LinearFunctional{std::move(*out.witness)};
}

inline void require_family_qm(const std::vector<RationalMatrix>& as, const ConeSpec& c, const char* who) {
    for (std::size_t i = 0; i < as.size(); ++i) {
        if (!is_qm(as[i], c).verdict) {
            throw ContractError(std::string(who) + ": matrix " + std::to_string(i + 1) +
                                " is not quasi-monotone for the cone");
        }
    }
}

} // namespace detail

/// Exact validation of a certificate candidate against a family: strict
/// positivity on the generators and strict decrease of every image.
inline bool validate_certificate(const LinearFunctional& lf,
                                 const std::vector<RationalMatrix>& as,
                                 const ConeSpec& c) {
    if (!c.is_polyhedral_kind()) {
        throw ContractError("validate_certificate requires a finitely generated cone");
    }
    if (lf.v.size() != c.dim() || is_zero_vector(lf.v)) return false;
    for (const auto& k : c.generators()) {
        if (dot(lf.v, k) <= 0) return false;
        for (const auto& a : as) {
            if (dot(lf.v, a * k) >= 0) return false;
        }
    }
    return true;
}

/// Common linear Lyapunov function for a family, or nullopt when none
/// exists. Every matrix must be quasi-monotone for the cone.
inline std::optional<LinearFunctional> find_cllf(const std::vector<RationalMatrix>& as,
                                                 const ConeSpec& c) {
    detail::require_polyhedral_proper(c, "find_cllf");
    detail::require_family_qm(as, c, "find_cllf");
    auto result = detail::find_cllf_unchecked(as, c);
    if (result && !validate_certificate(*result, as, c)) {
        throw InternalError("find_cllf produced a witness that fails exact validation");
    }
    return result;
}

/// Single-matrix linear Lyapunov function; exists iff the matrix is
/// Hurwitz, given quasi-monotonicity.
inline std::optional<LinearFunctional> find_llf(const RationalMatrix& a, const ConeSpec& c) {
    return find_cllf({a}, c);
}

/// Certificate validation on the ice cream cone: exact interior check of
/// the functional, exact decrease at the axis, and dense boundary sampling
/// for the decrease condition.
struct LorenzValidation {
    bool ok = false;
    bool numerically_validated = true; ///< sampling carries the boundary part
    double worst_margin = 0.0;         ///< most positive v(Ax) seen on samples
};

inline LorenzValidation validate_certificate_lorenz(const LinearFunctional& lf,
                                                    const std::vector<RationalMatrix>& as,
                                                    std::size_t dim,
                                                    std::size_t samples = 720,
                                                    double tol = 1e-9) {
    LorenzValidation out;
    if (lf.v.size() != dim) return out;
    // interior of the self-dual cone, exactly: v_n^2 > v_1^2 + ... + v_{n-1}^2
    Rational s(0);
    for (std::size_t i = 0; i + 1 < dim; ++i) s += lf.v[i] * lf.v[i];
    if (lf.v[dim - 1] <= 0 || s >= lf.v[dim - 1] * lf.v[dim - 1]) return out;

    RationalVector axis(dim, Rational(0));
    axis[dim - 1] = 1;
    for (const auto& a : as) {
        if (dot(lf.v, a * axis) >= 0) return out;
    }

    const RealVector vd = to_real(lf.v);
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& x : detail::lorenz_boundary_samples(dim, samples)) {
        for (const auto& a : as) {
            const RealVector ax = to_real(a) * x;
            worst = std::max(worst, dot(vd, ax));
        }
    }
    out.worst_margin = worst;
    out.ok = worst < -tol;
    return out;
}

/// Condition-by-condition report for common-certificate existence over a
/// finitely generated proper cone.
struct CLLFReport {
    bool exists = false;
    std::optional<LinearFunctional> certificate;
    std::vector<bool> cond1_kernel;     ///< Ker(A_i) meets C only at 0, per matrix
    bool cond1_all = true;
    bool cond2_pointed = false;         ///< sum of images is pointed
    bool cond3_trivial_intersection = false;
    bool kernel_sufficient = false;     ///< Ker(T) meets C^{m+1} only at 0
    bool qm_ok = true;                  ///< family quasi-monotonicity (the equivalence needs it)
};

inline CLLFReport cllf_conditions(const std::vector<RationalMatrix>& as, const ConeSpec& c) {
    detail::require_polyhedral_proper(c, "cllf_conditions");
    CLLFReport r;
    for (const auto& a : as) r.qm_ok = r.qm_ok && is_qm(a, c).verdict;

    const auto& gens = c.generators();
    const std::size_t n = c.dim();

    // condition 1: no generator combination in the kernel of any A_i
    for (const auto& a : as) {
        const std::size_t p = gens.size();
        std::vector<LinearConstraint> cons;
        for (std::size_t row = 0; row < n; ++row) {
            RationalVector co(p);
            for (std::size_t g = 0; g < p; ++g) co[g] = dot(a.row(row), gens[g]);
            cons.push_back(make_eq(std::move(co), Rational(0)));
        }
        cons.push_back(make_eq(RationalVector(p, Rational(1)), Rational(1)));
        const bool trivial_kernel =
            solve_feasibility(cons, p, all_nonneg(p)).status == LPStatus::Infeasible;
        r.cond1_kernel.push_back(trivial_kernel);
        r.cond1_all = r.cond1_all && trivial_kernel;
    }

    // conditions 2 and 3 on the summed image cone
    std::vector<std::vector<RationalVector>> image_parts;
    for (const auto& a : as) {
        std::vector<RationalVector> part;
        for (const auto& k : gens) part.push_back(a * k);
        image_parts.push_back(std::move(part));
    }
    const auto images = sum_cone(image_parts);
    r.cond2_pointed = is_pointed(images, n);
    r.cond3_trivial_intersection = intersect_trivially(c, images);

    r.kernel_sufficient = kernel_condition(BlockMap{as}, c);
    r.certificate = detail::find_cllf_unchecked(as, c);
    r.exists = r.certificate.has_value();

    if (r.qm_ok && !as.empty()) {
        const bool conditions = r.cond1_all && r.cond2_pointed && r.cond3_trivial_intersection;
        if (r.exists != conditions) {
            throw InternalError("certificate existence disagrees with the three-condition test");
        }
        if (r.kernel_sufficient && !r.exists) {
            throw InternalError("kernel condition holds but no certificate was found");
        }
    }
    return r;
}

/// Planar switched-stability criterion for a quasi-monotone Hurwitz pair on
/// the plane orthant: true iff A1 * A2^{-1} has no negative real eigenvalue,
/// decided exactly from trace, determinant and discriminant.
inline bool gurvits_planar(const RationalMatrix& a1, const RationalMatrix& a2) {
    if (a1.rows() != 2 || !a1.square() || a2.rows() != 2 || !a2.square()) {
        throw DimensionError("gurvits_planar is a 2x2 criterion");
    }
    const auto orth = ConeSpec::orthant(2);
    for (const auto* a : {&a1, &a2}) {
        if (!is_qm(*a, orth).verdict) {
            throw ContractError("gurvits_planar: matrix is not quasi-monotone for the plane orthant");
        }
        if (routh_hurwitz(char_poly(*a)) != StabilityVerdict::Hurwitz) {
            throw ContractError("gurvits_planar: matrix is not Hurwitz");
        }
    }
    const auto inv2 = inverse(a2);
    if (!inv2) throw ContractError("gurvits_planar: singular second matrix");
    const RationalMatrix m = a1 * *inv2;
    const Rational tr = m.trace();
    const Rational det = determinant(m);
    const Rational disc = tr * tr - 4 * det;
    if (disc < 0) return true;               // complex pair, no real eigenvalue at all
    if (det < 0) return false;               // real roots of opposite sign
    if (det == 0) return tr >= 0;            // roots {0, tr}
    return tr > 0;                           // same-sign pair
}

} // namespace conelyap
