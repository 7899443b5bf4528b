#pragma once

/// Cone representations and decision procedures.
///
/// Three cone classes are supported: the nonnegative orthant, finitely
/// generated (polyhedral) cones given by generators, and the ice cream
/// cone. Every polyhedral decision runs in exact rational arithmetic; the
/// only tolerances in this module live in the explicit tolerance mode of
/// membership classification, meant for floating trajectory points.
///
/// Dual cones are computed by the incremental double description method:
/// inequalities are inserted one at a time, the current ray set is split
/// into positive/zero/negative classes, and adjacent positive/negative
/// pairs are combined. Adjacency is decided by an exact rank test on the
/// common tight set.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "conelyap/linprog.hpp"
#include "conelyap/matrix.hpp"

namespace conelyap {

/// Scales a nonzero rational vector to the coprime integer vector with the
/// same direction (positive scaling only; rays are oriented).
inline RationalVector canonical_ray(const RationalVector& v) {
    Int l(1);
    for (const auto& x : v) l = lcm(l, Int(denominator(x)));
    std::vector<Int> ints(v.size());
    Int g(0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        ints[i] = Int(numerator(v[i])) * (l / Int(denominator(v[i])));
        g = gcd(g, ints[i]);
    }
    if (g == 0) throw ContractError("canonical_ray: zero vector");
    RationalVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(ints[i] / g);
    return out;
}

/// Canonical form for a line direction: like canonical_ray but with the
/// sign fixed so the first nonzero coordinate is positive.
inline RationalVector canonical_line(const RationalVector& v) {
    RationalVector out = canonical_ray(v);
    for (const auto& x : out) {
        if (x != 0) {
            if (x < 0) {
                for (auto& y : out) y = -y;
            }
            break;
        }
    }
    return out;
}

inline RationalVector negated(const RationalVector& v) {
    RationalVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
    return out;
}

/// Canonicalizes, drops zero vectors, removes duplicates up to positive
/// scaling, and keeps first-seen order.
inline std::vector<RationalVector> canonical_generators(const std::vector<RationalVector>& gens) {
    std::vector<RationalVector> out;
    for (const auto& g : gens) {
        if (is_zero_vector(g)) continue;
        RationalVector c = canonical_ray(g);
        bool seen = false;
        for (const auto& o : out) seen = seen || o == c;
        if (!seen) out.push_back(std::move(c));
    }
    return out;
}

/// Dual cone in V-form: extreme rays plus a basis of the lineality space
/// (nonempty exactly when the primal cone is not solid).
struct DualRep {
    std::vector<RationalVector> rays;
    std::vector<RationalVector> lineality;

    /// Rays together with +/- pairs for each lineality direction; the full
    /// facet-functional list of the primal cone.
    std::vector<RationalVector> functionals() const {
        std::vector<RationalVector> all = rays;
        for (const auto& l : lineality) {
            all.push_back(l);
            all.push_back(negated(l));
        }
        return all;
    }

    bool full_lineality(std::size_t dim) const { return lineality.size() == dim; }
};

namespace detail {

/// Incremental double description for {v : a_i . v >= 0}. The running cone
/// starts as all of space (lineality basis = standard basis, no rays).
class DoubleDescription {
public:
    explicit DoubleDescription(std::size_t dim) : dim_(dim) {
        for (std::size_t i = 0; i < dim; ++i) {
            RationalVector e(dim, Rational(0));
            e[i] = 1;
            lin_.push_back(std::move(e));
        }
    }

    void insert(const RationalVector& a) {
        if (a.size() != dim_) throw DimensionError("double description: inequality dimension mismatch");

        std::size_t hit = SIZE_MAX;
        for (std::size_t i = 0; i < lin_.size(); ++i) {
            if (dot(a, lin_[i]) != 0) {
                hit = i;
                break;
            }
        }

        if (hit != SIZE_MAX) {
            // a free direction leaves the lineality space and becomes a ray
            RationalVector pivot = lin_[hit];
            if (dot(a, pivot) < 0) pivot = negated(pivot);
            const Rational ap = dot(a, pivot);
            std::vector<RationalVector> new_lin;
            for (std::size_t i = 0; i < lin_.size(); ++i) {
                if (i == hit) continue;
                new_lin.push_back(canonical_line(combine(lin_[i], pivot, dot(a, lin_[i]), ap)));
            }
            for (auto& r : rays_) r = canonical_ray(combine(r, pivot, dot(a, r), ap));
            dedup(rays_);
            rays_.push_back(canonical_ray(pivot));
            lin_ = std::move(new_lin);
        } else {
            std::vector<std::size_t> pos, zero, neg;
            for (std::size_t i = 0; i < rays_.size(); ++i) {
                const int s = sign(dot(a, rays_[i]));
                (s > 0 ? pos : s == 0 ? zero : neg).push_back(i);
            }
            if (!neg.empty()) {
                std::vector<RationalVector> next;
                for (std::size_t i : pos) next.push_back(rays_[i]);
                for (std::size_t i : zero) next.push_back(rays_[i]);
                for (std::size_t p : pos) {
                    for (std::size_t q : neg) {
                        if (!adjacent(rays_[p], rays_[q])) continue;
                        // positive combination lying on the new hyperplane
                        next.push_back(canonical_ray(
                            combine(rays_[q], rays_[p], dot(a, rays_[q]), dot(a, rays_[p]))));
                    }
                }
                dedup(next);
                rays_ = std::move(next);
            }
        }
        inserted_.push_back(a);
    }

    DualRep result() const { return {rays_, lin_}; }

private:
    // x - (ax/ap) * p, returned unscaled
    static RationalVector combine(const RationalVector& x, const RationalVector& p,
                                  const Rational& ax, const Rational& ap) {
        RationalVector r(x.size());
        const Rational f = ax / ap;
        for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - f * p[i];
        return r;
    }

    /// Rank test: r1, r2 are adjacent extreme rays iff the inequalities
    /// tight at both span a space of dimension dim - |lineality| - 2.
    bool adjacent(const RationalVector& r1, const RationalVector& r2) const {
        if (dim_ < lin_.size() + 2) return false;
        std::vector<RationalVector> common;
        for (const auto& a : inserted_) {
            if (dot(a, r1) == 0 && dot(a, r2) == 0) common.push_back(a);
        }
        const std::size_t target = dim_ - lin_.size() - 2;
        if (common.size() < target) return false;
        return rank(common, dim_) == target;
    }

    static void dedup(std::vector<RationalVector>& rays) {
        std::vector<RationalVector> out;
        for (auto& r : rays) {
            bool seen = false;
            for (const auto& o : out) seen = seen || o == r;
            if (!seen) out.push_back(std::move(r));
        }
        rays = std::move(out);
    }

    std::size_t dim_;
    std::vector<RationalVector> lin_;
    std::vector<RationalVector> rays_;
    std::vector<RationalVector> inserted_;
};

} // namespace detail

/// Extreme rays (and lineality basis) of {v : g . v >= 0 for all generators g}.
/// An empty generator list yields the whole space, reported as full lineality.
inline DualRep dual_cone(const std::vector<RationalVector>& generators, std::size_t dim) {
    detail::DoubleDescription dd(dim);
    for (const auto& g : canonical_generators(generators)) dd.insert(g);
    return dd.result();
}

enum class ConeKind { Orthant, Polyhedral, IceCream };

/// A proper-cone candidate. Orthant(n) is semantically the polyhedral cone
/// on the standard basis and all predicates agree between the encodings.
/// The dual representation of polyhedral kinds is computed eagerly at
/// construction; instances are immutable afterwards.
class ConeSpec {
public:
    static ConeSpec orthant(std::size_t n) {
        ConeSpec c;
        c.kind_ = ConeKind::Orthant;
        c.dim_ = n;
        for (std::size_t i = 0; i < n; ++i) {
            RationalVector e(n, Rational(0));
            e[i] = 1;
            c.generators_.push_back(std::move(e));
        }
        c.dual_ = DualRep{c.generators_, {}};
        return c;
    }

    static ConeSpec polyhedral(std::size_t n, const std::vector<RationalVector>& generators) {
        ConeSpec c;
        c.kind_ = ConeKind::Polyhedral;
        c.dim_ = n;
        for (const auto& g : generators) {
            if (g.size() != n) throw DimensionError("cone generator has wrong dimension");
            if (is_zero_vector(g)) throw ContractError("cone generators must be nonzero");
        }
        c.generators_ = canonical_generators(generators);
        c.dual_ = dual_cone(c.generators_, n);
        return c;
    }

    static ConeSpec ice_cream(std::size_t n) {
        if (n < 2) throw ContractError("ice cream cone needs dimension >= 2");
        ConeSpec c;
        c.kind_ = ConeKind::IceCream;
        c.dim_ = n;
        return c;
    }

    ConeKind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    bool is_polyhedral_kind() const { return kind_ != ConeKind::IceCream; }

    const std::vector<RationalVector>& generators() const {
        if (!is_polyhedral_kind()) throw ContractError("ice cream cone has no generator list");
        return generators_;
    }

    const DualRep& dual() const {
        if (!is_polyhedral_kind()) throw ContractError("ice cream cone has no cached dual representation");
        return *dual_;
    }

private:
    ConeSpec() = default;
    ConeKind kind_ = ConeKind::Orthant;
    std::size_t dim_ = 0;
    std::vector<RationalVector> generators_;
    std::optional<DualRep> dual_;
};

enum class Containment { Interior, Boundary, Outside };

/// Exact membership classification.
inline Containment contains(const ConeSpec& c, const RationalVector& x) {
    if (x.size() != c.dim()) throw DimensionError("contains: point dimension mismatch");
    if (c.kind() == ConeKind::IceCream) {
        const std::size_t n = c.dim();
        if (x[n - 1] < 0) return Containment::Outside;
        Rational s(0);
        for (std::size_t i = 0; i + 1 < n; ++i) s += x[i] * x[i];
        const Rational h = x[n - 1] * x[n - 1];
        if (s > h) return Containment::Outside;
        return s < h ? Containment::Interior : Containment::Boundary;
    }
    bool boundary = false;
    for (const auto& f : c.dual().functionals()) {
        const Rational p = dot(f, x);
        if (p < 0) return Containment::Outside;
        if (p == 0) boundary = true;
    }
    return boundary ? Containment::Boundary : Containment::Interior;
}

/// Tolerance-mode classification for floating points; the boundary band is
/// |margin| <= tol * (1 + ||x||) against unit-normalized facets.
inline Containment contains(const ConeSpec& c, const RealVector& x, double tol) {
    if (x.size() != c.dim()) throw DimensionError("contains: point dimension mismatch");
    const double band = tol * (1.0 + norm2(x));
    double worst = std::numeric_limits<double>::infinity();
    if (c.kind() == ConeKind::IceCream) {
        const std::size_t n = c.dim();
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) s += x[i] * x[i];
        worst = x[n - 1] - std::sqrt(s);
    } else {
        for (const auto& f : c.dual().functionals()) {
            const RealVector fd = to_real(f);
            const double p = dot(fd, x) / norm2(fd);
            worst = std::min(worst, p);
        }
        if (c.dual().functionals().empty()) return Containment::Interior;
    }
    if (worst < -band) return Containment::Outside;
    if (worst <= band) return Containment::Boundary;
    return Containment::Interior;
}

/// True iff no nontrivial nonnegative combination of the (nonzero)
/// generators vanishes; decided by exact LP.
inline bool is_pointed(const std::vector<RationalVector>& generators, std::size_t dim) {
    const auto gens = canonical_generators(generators);
    if (gens.empty()) return true;
    const std::size_t p = gens.size();
    std::vector<LinearConstraint> cons;
    for (std::size_t row = 0; row < dim; ++row) {
        RationalVector c(p);
        for (std::size_t g = 0; g < p; ++g) c[g] = gens[g][row];
        cons.push_back(make_eq(std::move(c), Rational(0)));
    }
    cons.push_back(make_eq(RationalVector(p, Rational(1)), Rational(1)));
    return solve_feasibility(cons, p, all_nonneg(p)).status == LPStatus::Infeasible;
}

inline bool is_pointed(const ConeSpec& c) {
    if (c.kind() == ConeKind::IceCream) return true;
    return is_pointed(c.generators(), c.dim());
}

/// A convex cone is solid iff its generators span the whole space.
inline bool is_solid(const std::vector<RationalVector>& generators, std::size_t dim) {
    return rank(generators, dim) == dim;
}

inline bool is_solid(const ConeSpec& c) {
    if (c.kind() == ConeKind::IceCream) return true;
    return is_solid(c.generators(), c.dim());
}

/// Generators of K_1 + ... + K_r: concatenation with canonical dedup; zero
/// vectors (e.g. zero images under a map) are dropped.
inline std::vector<RationalVector> sum_cone(const std::vector<std::vector<RationalVector>>& parts) {
    std::vector<RationalVector> all;
    for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    return canonical_generators(all);
}

/// True iff C and cone(K) meet only in the origin. C must be pointed; the
/// normalization sum(alpha) = 1 then forces a nonzero common point.
inline bool intersect_trivially(const ConeSpec& c, const std::vector<RationalVector>& k) {
    if (!c.is_polyhedral_kind()) throw ContractError("intersect_trivially requires a polyhedral cone");
    if (!is_pointed(c)) throw ContractError("intersect_trivially requires a pointed cone");
    const auto& cg = c.generators();
    const auto kg = canonical_generators(k);
    if (cg.empty() || kg.empty()) return true;
    const std::size_t na = cg.size(), nb = kg.size();
    const std::size_t dim = c.dim();
    // variables: alpha (combination in C), beta (combination in K)
    std::vector<LinearConstraint> cons;
    for (std::size_t row = 0; row < dim; ++row) {
        RationalVector co(na + nb, Rational(0));
        for (std::size_t g = 0; g < na; ++g) co[g] = cg[g][row];
        for (std::size_t g = 0; g < nb; ++g) co[na + g] = -kg[g][row];
        cons.push_back(make_eq(std::move(co), Rational(0)));
    }
    RationalVector norm(na + nb, Rational(0));
    for (std::size_t g = 0; g < na; ++g) norm[g] = 1;
    cons.push_back(make_eq(std::move(norm), Rational(1)));
    return solve_feasibility(cons, na + nb, all_nonneg(na + nb)).status == LPStatus::Infeasible;
}

/// The block map T(x_0, ..., x_m) = x_0 - A_1 x_1 - ... - A_m x_m.
struct BlockMap {
    std::vector<RationalMatrix> blocks;

    std::size_t block_dim() const {
        if (blocks.empty()) throw ContractError("block map needs at least one block");
        return blocks.front().rows();
    }
};

/// True iff Ker(T) meets C^{m+1} only in the origin. Each block of a
/// candidate kernel point is written as a conic combination of the
/// generators; a single total normalization makes the point nonzero
/// (valid because C is pointed with nonzero generators).
inline bool kernel_condition(const BlockMap& t, const ConeSpec& c) {
    if (!c.is_polyhedral_kind()) throw ContractError("kernel_condition requires a polyhedral cone");
    if (!is_pointed(c)) throw ContractError("kernel_condition requires a pointed cone");
    const std::size_t n = c.dim();
    const auto& gens = c.generators();
    const std::size_t p = gens.size();
    const std::size_t m = t.blocks.size();
    for (const auto& b : t.blocks) {
        b.require_square("kernel_condition blocks");
        if (b.rows() != n) throw DimensionError("kernel_condition: block dimension mismatch");
    }
    if (p == 0) return true;

    // variables: alpha[j][g] for block j = 0..m, generator g
    const std::size_t nv = (m + 1) * p;
    const auto var = [p](std::size_t j, std::size_t g) { return j * p + g; };
    std::vector<LinearConstraint> cons;
    for (std::size_t row = 0; row < n; ++row) {
        RationalVector co(nv, Rational(0));
        for (std::size_t g = 0; g < p; ++g) co[var(0, g)] = gens[g][row];
        for (std::size_t j = 0; j < m; ++j) {
            const RationalVector img_row = t.blocks[j].row(row);
            for (std::size_t g = 0; g < p; ++g) co[var(j + 1, g)] = -dot(img_row, gens[g]);
        }
        cons.push_back(make_eq(std::move(co), Rational(0)));
    }
    cons.push_back(make_eq(RationalVector(nv, Rational(1)), Rational(1)));
    return solve_feasibility(cons, nv, all_nonneg(nv)).status == LPStatus::Infeasible;
}

/// C^m with blockwise-embedded generators; the dual identifies with the
/// m-fold product of the dual.
inline ConeSpec product_cone(const ConeSpec& c, std::size_t m) {
    if (m == 0) throw ContractError("product cone needs m >= 1");
    if (c.kind() == ConeKind::Orthant) return ConeSpec::orthant(c.dim() * m);
    if (c.kind() == ConeKind::IceCream) {
        throw ContractError("product of ice cream cones is not a supported cone class");
    }
    const std::size_t n = c.dim();
    std::vector<RationalVector> gens;
    for (std::size_t b = 0; b < m; ++b) {
        for (const auto& g : c.generators()) {
            RationalVector e(n * m, Rational(0));
            for (std::size_t i = 0; i < n; ++i) e[b * n + i] = g[i];
            gens.push_back(std::move(e));
        }
    }
    return ConeSpec::polyhedral(n * m, gens);
}

} // namespace conelyap
