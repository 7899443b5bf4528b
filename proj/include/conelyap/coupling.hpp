#pragma once

/// Diffusive coupling: validation of coupling families against a cone,
/// exact assembly of the coupled block matrix, stability analysis, the
/// principal eigenvalue of cone-preserving matrices, and destabilization
/// sweeps over coupling parameters.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "conelyap/charpoly.hpp"
#include "conelyap/lyapunov.hpp"
#include "conelyap/monotone.hpp"
#include "conelyap/spectral.hpp"

namespace conelyap {

/// Indexed family {D_ij} of coupling matrices. Symmetry D_ij = D_ji is
/// enforced by storage (one entry per unordered pair); the asymmetric
/// variant exists for invariance-only analyses, where symmetry is never
/// used.
class DiffusiveFamily {
public:
    static DiffusiveFamily symmetric(std::size_t m, std::size_t n,
                                     std::map<std::pair<std::size_t, std::size_t>, RationalMatrix> entries) {
        DiffusiveFamily f(m, n, true);
        for (auto& [key, mat] : entries) {
            const auto norm = normalize_key(key, m);
            f.check_entry(mat);
            if (f.entries_.count(norm)) {
                throw ContractError("duplicate coupling entry for pair (" + std::to_string(key.first + 1) +
                                    "," + std::to_string(key.second + 1) + ")");
            }
            f.entries_.emplace(norm, std::move(mat));
        }
        return f;
    }

    static DiffusiveFamily asymmetric(std::size_t m, std::size_t n,
                                      std::map<std::pair<std::size_t, std::size_t>, RationalMatrix> entries) {
        DiffusiveFamily f(m, n, false);
        for (auto& [key, mat] : entries) {
            check_key(key, m);
            f.check_entry(mat);
            f.entries_.emplace(key, std::move(mat));
        }
        return f;
    }

    std::size_t subsystems() const { return m_; }
    std::size_t dim() const { return n_; }
    bool is_symmetric() const { return symmetric_; }

    /// D_{ij}; absent pairs couple with the zero matrix.
    const RationalMatrix& entry(std::size_t i, std::size_t j) const {
        check_key({i, j}, m_);
        const auto key = symmetric_ ? normalize_key({i, j}, m_) : std::make_pair(i, j);
        const auto it = entries_.find(key);
        return it == entries_.end() ? zero_ : it->second;
    }

    const std::map<std::pair<std::size_t, std::size_t>, RationalMatrix>& entries() const { return entries_; }

private:
    DiffusiveFamily(std::size_t m, std::size_t n, bool symmetric)
        : m_(m), n_(n), symmetric_(symmetric), zero_(n, n) {
        if (m < 1) throw ContractError("diffusive family needs at least one subsystem");
    }

    static void check_key(const std::pair<std::size_t, std::size_t>& key, std::size_t m) {
        if (key.first >= m || key.second >= m || key.first == key.second) {
            throw ContractError("coupling pair indices must be distinct and within the family");
        }
    }

    static std::pair<std::size_t, std::size_t> normalize_key(std::pair<std::size_t, std::size_t> key,
                                                             std::size_t m) {
        check_key(key, m);
        if (key.first > key.second) std::swap(key.first, key.second);
        return key;
    }

    void check_entry(const RationalMatrix& mat) const {
        if (!mat.square() || mat.rows() != n_) {
            throw DimensionError("coupling matrix must be " + std::to_string(n_) + "x" + std::to_string(n_));
        }
    }

    std::size_t m_, n_;
    bool symmetric_;
    std::map<std::pair<std::size_t, std::size_t>, RationalMatrix> entries_;
    RationalMatrix zero_;
};

enum class DiffusiveMode { ExactPolyhedral, RuleAlphaIdentity, SampledIceCream };

struct DiffusiveValidation {
    bool valid = true;
    DiffusiveMode mode = DiffusiveMode::ExactPolyhedral;
    bool numerically_validated = false; ///< true when any entry was decided by sampling
    std::vector<std::string> issues;
};

namespace detail {

inline bool is_nonneg_multiple_of_identity(const RationalMatrix& d) {
    for (std::size_t i = 0; i < d.rows(); ++i) {
        for (std::size_t j = 0; j < d.cols(); ++j) {
            if (i != j && d(i, j) != 0) return false;
            if (i == j && (d(i, j) != d(0, 0) || d(i, j) < 0)) return false;
        }
    }
    return true;
}

} // namespace detail

/// Checks that every family member preserves the cone and annihilates the
/// supporting functionals on the boundary. Polyhedral cones are decided
/// exactly on generator-facet incidences; nonnegative multiples of the
/// identity are accepted by rule on any cone; remaining ice cream entries
/// are sampled on the boundary and flagged as numerically validated.
inline DiffusiveValidation validate_diffusive(const DiffusiveFamily& f, const ConeSpec& c) {
    if (f.dim() != c.dim()) throw DimensionError("validate_diffusive: cone and family dimensions differ");
    DiffusiveValidation out;
    const auto note = [&](std::size_t i, std::size_t j, const std::string& what) {
        out.valid = false;
        out.issues.push_back("D(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): " + what);
    };

    if (c.is_polyhedral_kind()) {
        out.mode = DiffusiveMode::ExactPolyhedral;
        const auto& gens = c.generators();
        const auto facets = c.dual().functionals();
        for (const auto& [key, d] : f.entries()) {
            for (std::size_t g = 0; g < gens.size(); ++g) {
                const RationalVector image = d * gens[g];
                if (contains(c, image) == Containment::Outside) {
                    note(key.first, key.second, "image of generator " + std::to_string(g + 1) + " leaves the cone");
                }
                for (std::size_t q = 0; q < facets.size(); ++q) {
                    if (dot(facets[q], gens[g]) != 0) continue;
                    if (dot(facets[q], image) != 0) {
                        note(key.first, key.second,
                             "facet " + std::to_string(q + 1) + " not annihilated at generator " +
                                 std::to_string(g + 1));
                    }
                }
            }
        }
        return out;
    }

    // ice cream cone
    out.mode = DiffusiveMode::RuleAlphaIdentity;
    const std::size_t n = c.dim();
    for (const auto& [key, d] : f.entries()) {
        if (detail::is_nonneg_multiple_of_identity(d)) continue;
        out.mode = DiffusiveMode::SampledIceCream;
        out.numerically_validated = true;
        const RealMatrix dd = to_real(d);
        for (const auto& x : detail::lorenz_boundary_samples(n, 720)) {
            const RealVector image = dd * x;
            if (contains(c, image, 1e-9) == Containment::Outside) {
                note(key.first, key.second, "sampled boundary image leaves the cone");
                break;
            }
            // supporting functional at x is proportional to Qx
            double qx_dx = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                qx_dx += (i + 1 == n ? -x[i] : x[i]) * image[i];
            }
            if (std::abs(qx_dx) > 1e-9) {
                note(key.first, key.second, "boundary functional not annihilated (|Qx.Dx| > 1e-9)");
                break;
            }
        }
    }
    return out;
}

/// The coupled operator on the m-fold product space: diagonal block i is
/// A_i - sum_{j != i} D_ij, off-diagonal block (i, j) is D_ij.
struct CoupledMatrix {
    std::size_t m = 0, n = 0;
    RationalMatrix matrix;
};

inline CoupledMatrix assemble_coupled(const std::vector<RationalMatrix>& as, const DiffusiveFamily& f) {
    const std::size_t m = f.subsystems();
    const std::size_t n = f.dim();
    if (as.size() != m) {
        throw DimensionError("assemble_coupled: family is sized for " + std::to_string(m) + " systems, got " +
                             std::to_string(as.size()));
    }
    for (const auto& a : as) {
        a.require_square("assemble_coupled");
        if (a.rows() != n) throw DimensionError("assemble_coupled: system dimension mismatch");
    }
    CoupledMatrix out{m, n, RationalMatrix(m * n, m * n)};
    for (std::size_t i = 0; i < m; ++i) {
        RationalMatrix diag = as[i];
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            diag = diag - f.entry(i, j);
            out.matrix.set_block(i * n, j * n, f.entry(i, j));
        }
        out.matrix.set_block(i * n, i * n, diag);
    }
    return out;
}

struct StabilityReport {
    StabilityVerdict verdict = StabilityVerdict::Marginal;
    bool hurwitz = false;                      ///< exact, from the Routh table
    double spectral_abscissa = 0.0;            ///< advisory floating value
    std::optional<double> principal_eig;       ///< present when the coupled matrix is Metzler
    std::vector<bool> qm_per_system;
    bool qm_on_product = false;
    bool diffusive_valid = false;
    std::optional<LinearFunctional> certificate; ///< on the product cone, when a common one exists
    std::vector<std::string> diagnostics;
};

/// Largest-real-part eigenvalue of a Metzler matrix by power iteration on
/// the shifted nonnegative matrix M + (1 + max |M_ii|) I.
inline double principal_eigenvalue(const RationalMatrix& m) {
    m.require_square("principal_eigenvalue");
    const std::size_t n = m.rows();
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && m(i, j) < 0) {
                throw ContractError("principal_eigenvalue requires a Metzler matrix");
            }
        }
        max_diag = std::max(max_diag, std::abs(to_double(m(i, i))));
    }
    if (n == 0) throw ContractError("principal_eigenvalue of an empty matrix");

    const double shift = 1.0 + max_diag;
    RealMatrix p = to_real(m);
    for (std::size_t i = 0; i < n; ++i) p(i, i) += shift;

    RealVector v(n, 1.0 / static_cast<double>(n));
    double value = 0.0;
    for (long iter = 0; iter < 2000000; ++iter) {
        RealVector pv = p * v;
        double vv = 0.0, vpv = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            vv += v[i] * v[i];
            vpv += v[i] * pv[i];
        }
        value = vpv / vv;
        double resid = 0.0;
        for (std::size_t i = 0; i < n; ++i) resid = std::max(resid, std::abs(pv[i] - value * v[i]));
        const double scale = norm_inf(pv);
        if (scale == 0.0) return -shift; // nilpotent shifted matrix cannot occur; zero vector guard
        for (std::size_t i = 0; i < n; ++i) v[i] = pv[i] / scale;
        if (resid <= 1e-12 * std::max(1.0, std::abs(value))) break;
    }
    return value - shift;
}

/// Full stability analysis of the coupled system. Hypothesis failures
/// (non-QM systems, invalid coupling) are reported in the result rather
/// than thrown, so destabilization sweeps can cover systems the theorems
/// do not protect; dimension errors still throw.
inline StabilityReport analyze_coupled(const std::vector<RationalMatrix>& as, const DiffusiveFamily& f,
                                       const ConeSpec& c) {
    if (f.dim() != c.dim()) throw DimensionError("analyze_coupled: cone dimension mismatch");
    StabilityReport r;

    const auto validation = validate_diffusive(f, c);
    r.diffusive_valid = validation.valid;
    for (const auto& issue : validation.issues) r.diagnostics.push_back("coupling: " + issue);

    bool all_qm = true;
    for (std::size_t i = 0; i < as.size(); ++i) {
        const bool qm = is_qm(as[i], c).verdict;
        r.qm_per_system.push_back(qm);
        all_qm = all_qm && qm;
        if (!qm) r.diagnostics.push_back("system " + std::to_string(i + 1) + " is not quasi-monotone for the cone");
    }

    const auto coupled = assemble_coupled(as, f);
    r.verdict = routh_hurwitz(char_poly(coupled.matrix));
    r.hurwitz = r.verdict == StabilityVerdict::Hurwitz;
    r.spectral_abscissa = spectral_abscissa(coupled.matrix);

    bool metzler = true;
    for (std::size_t i = 0; i < coupled.matrix.rows() && metzler; ++i) {
        for (std::size_t j = 0; j < coupled.matrix.cols(); ++j) {
            if (i != j && coupled.matrix(i, j) < 0) {
                metzler = false;
                break;
            }
        }
    }
    if (metzler) r.principal_eig = principal_eigenvalue(coupled.matrix);

    if (c.is_polyhedral_kind()) {
        r.qm_on_product = is_qm(coupled.matrix, product_cone(c, coupled.m)).verdict;
    } else {
        // product of ice cream cones is outside the decidable classes; the
        // invariance theorem settles it when the hypotheses hold
        r.qm_on_product = all_qm && validation.valid;
        if (!r.qm_on_product) {
            r.diagnostics.push_back("product-cone quasi-monotonicity not established for this cone class");
        }
    }

    if (c.is_polyhedral_kind() && all_qm && validation.valid && f.is_symmetric() &&
        is_pointed(c) && is_solid(c)) {
        const auto lambda = detail::find_cllf_unchecked(as, c);
        if (lambda) {
            LinearFunctional big;
            for (std::size_t b = 0; b < coupled.m; ++b) {
                big.v.insert(big.v.end(), lambda->v.begin(), lambda->v.end());
            }
            if (!validate_certificate(big, {coupled.matrix}, product_cone(c, coupled.m))) {
                throw InternalError("product certificate failed exact validation");
            }
            if (r.verdict != StabilityVerdict::Hurwitz) {
                throw InternalError("common certificate exists but the coupled matrix is not Hurwitz");
            }
            r.certificate = std::move(big);
        }
    }
    return r;
}

/// A matrix whose entries are exact rationals or named parameters.
using ParamEntry = std::variant<Rational, std::string>;

struct ParamMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<ParamEntry> entries; ///< row major

    const ParamEntry& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

    std::set<std::string> parameters() const {
        std::set<std::string> names;
        for (const auto& e : entries) {
            if (const auto* s = std::get_if<std::string>(&e)) names.insert(*s);
        }
        return names;
    }

    RationalMatrix instantiate(const std::map<std::string, Rational>& bindings) const {
        RationalMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                const auto& e = at(i, j);
                if (const auto* r = std::get_if<Rational>(&e)) {
                    m(i, j) = *r;
                } else {
                    const auto& name = std::get<std::string>(e);
                    const auto it = bindings.find(name);
                    if (it == bindings.end()) throw ContractError("unbound parameter '" + name + "'");
                    m(i, j) = it->second;
                }
            }
        }
        return m;
    }
};

/// Symmetric family template with parameter-valued entries.
struct CouplingTemplate {
    std::size_t m = 0, n = 0;
    std::map<std::pair<std::size_t, std::size_t>, ParamMatrix> entries;

    std::set<std::string> parameters() const {
        std::set<std::string> names;
        for (const auto& [key, pm] : entries) {
            const auto sub = pm.parameters();
            names.insert(sub.begin(), sub.end());
        }
        return names;
    }

    DiffusiveFamily instantiate(const std::map<std::string, Rational>& bindings) const {
        std::map<std::pair<std::size_t, std::size_t>, RationalMatrix> mats;
        for (const auto& [key, pm] : entries) mats.emplace(key, pm.instantiate(bindings));
        return DiffusiveFamily::symmetric(m, n, std::move(mats));
    }
};

struct ParamRange {
    Rational min, max;
    std::size_t steps = 1;

    std::vector<Rational> values() const {
        if (steps < 1) throw ContractError("parameter range needs at least one step");
        if (steps == 1) return {min};
        std::vector<Rational> v;
        const Rational h = (max - min) / Rational(static_cast<long>(steps - 1));
        for (std::size_t k = 0; k < steps; ++k) v.push_back(min + h * Rational(static_cast<long>(k)));
        return v;
    }
};

enum class SweepCategory { Unstable, Marginal, Stable };

struct SweepCell {
    std::vector<std::pair<std::string, Rational>> assignment;
    StabilityReport report;
    SweepCategory category = SweepCategory::Stable;
};

/// Instantiates, assembles and analyzes the coupled system at every grid
/// point. Unstable cells are listed first, then marginal, then stable;
/// within a category the original grid order (parameters iterated in name
/// order) is kept, so output is deterministic.
inline std::vector<SweepCell> sweep_destabilize(const std::vector<RationalMatrix>& as,
                                                const CouplingTemplate& tmpl,
                                                const std::map<std::string, ParamRange>& grid,
                                                const ConeSpec& c) {
    for (const auto& name : tmpl.parameters()) {
        if (!grid.count(name)) throw ContractError("no range for parameter '" + name + "'");
    }
    std::vector<std::string> names;
    std::vector<std::vector<Rational>> values;
    for (const auto& [name, range] : grid) {
        names.push_back(name);
        values.push_back(range.values());
    }

    std::vector<SweepCell> unstable, marginal, stable;
    std::vector<std::size_t> index(names.size(), 0);
    while (true) {
        std::map<std::string, Rational> bindings;
        std::vector<std::pair<std::string, Rational>> assignment;
        for (std::size_t p = 0; p < names.size(); ++p) {
            bindings.emplace(names[p], values[p][index[p]]);
            assignment.emplace_back(names[p], values[p][index[p]]);
        }
        SweepCell cell;
        cell.assignment = std::move(assignment);
        cell.report = analyze_coupled(as, tmpl.instantiate(bindings), c);
        switch (cell.report.verdict) {
            case StabilityVerdict::NotHurwitz:
                cell.category = SweepCategory::Unstable;
                unstable.push_back(std::move(cell));
                break;
            case StabilityVerdict::Marginal:
                cell.category = SweepCategory::Marginal;
                marginal.push_back(std::move(cell));
                break;
            case StabilityVerdict::Hurwitz:
                cell.category = SweepCategory::Stable;
                stable.push_back(std::move(cell));
                break;
        }

        // advance the grid odometer, last parameter fastest
        bool rolled_over = true;
        for (std::size_t p = names.size(); p-- > 0;) {
            if (++index[p] < values[p].size()) {
                rolled_over = false;
                break;
            }
            index[p] = 0;
        }
        if (rolled_over) break;
    }

    std::vector<SweepCell> out;
    out.reserve(unstable.size() + marginal.size() + stable.size());
    for (auto* bucket : {&unstable, &marginal, &stable}) {
        for (auto& cell : *bucket) out.push_back(std::move(cell));
    }
    return out;
}

} // namespace conelyap
