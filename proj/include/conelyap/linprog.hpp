#pragma once

/// Exact linear programming over the rationals.
///
/// Two-phase tableau simplex with Bland's anti-cycling rule throughout, so
/// every run terminates and is deterministic for a fixed input order. Free
/// variables are split into nonnegative pairs, rows are normalized to
/// nonnegative right-hand sides, and artificial variables carry phase one.
/// Witnesses are exact rational points satisfying every constraint with
/// zero slack violation.
///
/// Strict inequalities never appear here: callers working over cones
/// homogenize and replace "> 0" by ">= 1", which is equivalent up to the
/// positive scaling a cone admits.

#include <cstddef>
#include <optional>
#include <vector>

#include "conelyap/matrix.hpp"

namespace conelyap {

enum class Relation { GreaterEqual, Equal, LessEqual };

struct LinearConstraint {
    RationalVector coeffs;
    Relation rel;
    Rational rhs;
};

inline LinearConstraint make_ge(RationalVector c, Rational rhs) {
    return {std::move(c), Relation::GreaterEqual, std::move(rhs)};
}
inline LinearConstraint make_le(RationalVector c, Rational rhs) {
    return {std::move(c), Relation::LessEqual, std::move(rhs)};
}
inline LinearConstraint make_eq(RationalVector c, Rational rhs) {
    return {std::move(c), Relation::Equal, std::move(rhs)};
}

enum class LPStatus { Feasible, Infeasible, Optimal, Unbounded };

struct LPOutcome {
    LPStatus status;
    std::optional<RationalVector> witness; ///< exact point over the original variables
    std::optional<Rational> objective;
};

enum class Sense { Minimize, Maximize };

namespace detail {

class SimplexTableau {
public:
    SimplexTableau(const std::vector<LinearConstraint>& constraints,
                   std::size_t num_vars,
                   const std::vector<bool>& nonneg)
        : num_vars_(num_vars) {
        if (nonneg.size() != num_vars) {
            throw DimensionError("nonneg flag count does not match variable count");
        }
        // structural columns: one per nonnegative variable, a +/- pair per free one
        col_pos_.resize(num_vars);
        col_neg_.assign(num_vars, SIZE_MAX);
        for (std::size_t j = 0; j < num_vars; ++j) {
            col_pos_[j] = num_cols_++;
            if (!nonneg[j]) col_neg_[j] = num_cols_++;
        }
        structural_cols_ = num_cols_;

        const std::size_t m = constraints.size();
        rows_.assign(m, RationalVector());
        rhs_.assign(m, Rational(0));
        basis_.assign(m, SIZE_MAX);

        std::vector<Relation> rels(m);
        for (std::size_t i = 0; i < m; ++i) {
            const auto& c = constraints[i];
            if (c.coeffs.size() != num_vars) {
                throw DimensionError("constraint has " + std::to_string(c.coeffs.size()) +
                                     " coefficients, expected " + std::to_string(num_vars));
            }
            rows_[i].assign(num_cols_, Rational(0));
            const bool flip = c.rhs < 0;
            for (std::size_t j = 0; j < num_vars; ++j) {
                const Rational v = flip ? -c.coeffs[j] : c.coeffs[j];
                rows_[i][col_pos_[j]] = v;
                if (col_neg_[j] != SIZE_MAX) rows_[i][col_neg_[j]] = -v;
            }
            rhs_[i] = flip ? -c.rhs : c.rhs;
            rels[i] = c.rel;
            if (flip) {
                if (c.rel == Relation::GreaterEqual) rels[i] = Relation::LessEqual;
                else if (c.rel == Relation::LessEqual) rels[i] = Relation::GreaterEqual;
            }
        }

        // slack / surplus columns, then artificials (appended so Bland's
        // index order prefers structural variables)
        for (std::size_t i = 0; i < m; ++i) {
            if (rels[i] == Relation::LessEqual) {
                const std::size_t s = add_column();
                rows_[i][s] = 1;
                basis_[i] = s;
            } else if (rels[i] == Relation::GreaterEqual) {
                const std::size_t s = add_column();
                rows_[i][s] = -1;
            }
        }
        first_artificial_ = num_cols_;
        for (std::size_t i = 0; i < m; ++i) {
            if (basis_[i] == SIZE_MAX) {
                const std::size_t a = add_column();
                rows_[i][a] = 1;
                basis_[i] = a;
            }
        }
    }

    /// Phase one: drive the artificial total to zero. False means infeasible.
    bool phase_one() {
        RationalVector cost(num_cols_, Rational(0));
        for (std::size_t j = first_artificial_; j < num_cols_; ++j) cost[j] = 1;
        run_simplex(cost, /*allow_artificial=*/true);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (basis_[i] >= first_artificial_ && rhs_[i] != 0) return false;
        }
        remove_artificials_from_basis();
        return true;
    }

    /// Phase two on a minimization cost over the original variables.
    /// Returns false when unbounded.
    bool phase_two(const RationalVector& objective) {
        RationalVector cost(num_cols_, Rational(0));
        for (std::size_t j = 0; j < num_vars_; ++j) {
            cost[col_pos_[j]] = objective[j];
            if (col_neg_[j] != SIZE_MAX) cost[col_neg_[j]] = -objective[j];
        }
        return run_simplex(cost, /*allow_artificial=*/false);
    }

    RationalVector witness() const {
        RationalVector value(num_cols_, Rational(0));
        for (std::size_t i = 0; i < rows_.size(); ++i) value[basis_[i]] = rhs_[i];
        RationalVector x(num_vars_, Rational(0));
        for (std::size_t j = 0; j < num_vars_; ++j) {
            x[j] = value[col_pos_[j]];
            if (col_neg_[j] != SIZE_MAX) x[j] -= value[col_neg_[j]];
        }
        return x;
    }

private:
    std::size_t add_column() {
        for (auto& r : rows_) r.emplace_back(0);
        return num_cols_++;
    }

    /// Bland's rule simplex minimizing cost over the current basis.
    /// Returns false iff an unbounded descent direction is found.
    bool run_simplex(const RationalVector& cost, bool allow_artificial) {
        const std::size_t m = rows_.size();
        const std::size_t limit = allow_artificial ? num_cols_ : first_artificial_;
        while (true) {
            // reduced costs d_j = c_j - sum_i c_{B(i)} T(i,j)
            std::size_t entering = SIZE_MAX;
            for (std::size_t j = 0; j < limit; ++j) {
                Rational d = cost[j];
                for (std::size_t i = 0; i < m; ++i) {
                    if (cost[basis_[i]] != 0 && rows_[i][j] != 0) d -= cost[basis_[i]] * rows_[i][j];
                }
                if (d < 0) {
                    entering = j;
                    break; // Bland: first eligible index
                }
            }
            if (entering == SIZE_MAX) return true;

            std::size_t leaving = SIZE_MAX;
            Rational best_ratio(0);
            for (std::size_t i = 0; i < m; ++i) {
                if (rows_[i][entering] <= 0) continue;
                const Rational ratio = rhs_[i] / rows_[i][entering];
                if (leaving == SIZE_MAX || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leaving])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
            if (leaving == SIZE_MAX) return false;
            pivot(leaving, entering);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        const Rational p = rows_[row][col];
        for (auto& v : rows_[row]) v /= p;
        rhs_[row] /= p;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == row || rows_[i][col] == 0) continue;
            const Rational f = rows_[i][col];
            for (std::size_t j = 0; j < num_cols_; ++j) rows_[i][j] -= f * rows_[row][j];
            rhs_[i] -= f * rhs_[row];
        }
        basis_[row] = col;
    }

    /// After a zero-cost phase one, basic artificials sit at value zero;
    /// pivot them out on any nonzero structural entry, dropping rows that
    /// turned out redundant.
    void remove_artificials_from_basis() {
        for (std::size_t i = 0; i < rows_.size();) {
            if (basis_[i] < first_artificial_) {
                ++i;
                continue;
            }
            std::size_t col = SIZE_MAX;
            for (std::size_t j = 0; j < first_artificial_; ++j) {
                if (rows_[i][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col == SIZE_MAX) {
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
            } else {
                pivot(i, col);
                ++i;
            }
        }
    }

    std::size_t num_vars_;
    std::size_t num_cols_ = 0;
    std::size_t structural_cols_ = 0;
    std::size_t first_artificial_ = 0;
    std::vector<std::size_t> col_pos_, col_neg_;
    std::vector<RationalVector> rows_;
    RationalVector rhs_;
    std::vector<std::size_t> basis_;
};

inline std::vector<bool> nonneg_flags(std::size_t num_vars, const std::vector<std::size_t>& nonneg_vars) {
    std::vector<bool> flags(num_vars, false);
    for (std::size_t j : nonneg_vars) {
        if (j >= num_vars) throw DimensionError("nonnegative variable index out of range");
        flags[j] = true;
    }
    return flags;
}

} // namespace detail

inline std::vector<std::size_t> all_nonneg(std::size_t num_vars) {
    std::vector<std::size_t> idx(num_vars);
    for (std::size_t j = 0; j < num_vars; ++j) idx[j] = j;
    return idx;
}

/// Feasible with an exact witness, or Infeasible. An empty constraint list
/// is feasible with the zero witness.
inline LPOutcome solve_feasibility(const std::vector<LinearConstraint>& constraints,
                                   std::size_t num_vars,
                                   const std::vector<std::size_t>& nonneg_vars) {
    detail::SimplexTableau t(constraints, num_vars, detail::nonneg_flags(num_vars, nonneg_vars));
    if (!t.phase_one()) return {LPStatus::Infeasible, std::nullopt, std::nullopt};
    return {LPStatus::Feasible, t.witness(), std::nullopt};
}

/// Optimal with an exact optimum, Unbounded, or Infeasible.
inline LPOutcome solve_lp(const RationalVector& objective,
                          Sense sense,
                          const std::vector<LinearConstraint>& constraints,
                          std::size_t num_vars,
                          const std::vector<std::size_t>& nonneg_vars) {
    if (objective.size() != num_vars) {
        throw DimensionError("objective length does not match variable count");
    }
    detail::SimplexTableau t(constraints, num_vars, detail::nonneg_flags(num_vars, nonneg_vars));
    if (!t.phase_one()) return {LPStatus::Infeasible, std::nullopt, std::nullopt};

    RationalVector cost = objective;
    if (sense == Sense::Maximize) {
        for (auto& c : cost) c = -c;
    }
    if (!t.phase_two(cost)) return {LPStatus::Unbounded, std::nullopt, std::nullopt};

    RationalVector x = t.witness();
    Rational value = dot(objective, x);
    return {LPStatus::Optimal, std::move(x), std::move(value)};
}

} // namespace conelyap
