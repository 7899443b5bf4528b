#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "conelyap/linprog.hpp"

using namespace conelyap;

namespace {

bool satisfies(const LinearConstraint& c, const RationalVector& x) {
    const Rational lhs = dot(c.coeffs, x);
    switch (c.rel) {
        case Relation::GreaterEqual: return lhs >= c.rhs;
        case Relation::Equal: return lhs == c.rhs;
        case Relation::LessEqual: return lhs <= c.rhs;
    }
    return false;
}

bool satisfies_all(const std::vector<LinearConstraint>& cons,
                   const std::vector<std::size_t>& nonneg,
                   const RationalVector& x) {
    for (const auto& c : cons) {
        if (!satisfies(c, x)) return false;
    }
    for (std::size_t j : nonneg) {
        if (x[j] < 0) return false;
    }
    return true;
}

/// Independent feasibility oracle: box the polyhedron (entries are tiny, so
/// any nonempty system meets the box), then enumerate all n-subsets of the
/// tight-candidate rows and test the resulting basic points.
bool feasible_by_vertex_enumeration(const std::vector<LinearConstraint>& cons,
                                    std::size_t n,
                                    const std::vector<std::size_t>& nonneg) {
    std::vector<RationalVector> rows;
    RationalVector rhs;
    auto add_row = [&](RationalVector r, Rational b) {
        rows.push_back(std::move(r));
        rhs.push_back(std::move(b));
    };
    for (const auto& c : cons) add_row(c.coeffs, c.rhs);
    for (std::size_t j : nonneg) {
        RationalVector r(n, Rational(0));
        r[j] = 1;
        add_row(std::move(r), Rational(0));
    }
    const Rational box(1000000);
    for (std::size_t j = 0; j < n; ++j) {
        RationalVector r(n, Rational(0));
        r[j] = 1;
        add_row(r, box);
        add_row(std::move(r), -box);
    }

    const std::size_t total = rows.size();
    std::vector<bool> mask(total, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(n), true);
    std::sort(mask.begin(), mask.end());
    std::vector<std::size_t> idx;
    do {
        idx.clear();
        for (std::size_t i = 0; i < total; ++i) {
            if (mask[i]) idx.push_back(i);
        }
        RationalMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) a(i, j) = rows[idx[i]][j];
        }
        const auto ai = inverse(a);
        if (!ai.has_value()) continue;
        RationalVector b(n);
        for (std::size_t i = 0; i < n; ++i) b[i] = rhs[idx[i]];
        const RationalVector x = *ai * b;
        if (satisfies_all(cons, nonneg, x)) return true;
    } while (std::next_permutation(mask.begin(), mask.end()));
    return false;
}

} // namespace

TEST_CASE("feasibility basics") {
    const auto r = [](int v) { return Rational(v); };

    auto out = solve_feasibility({make_ge({r(1)}, r(1)), make_le({r(1)}, r(0))}, 1, all_nonneg(1));
    CHECK(out.status == LPStatus::Infeasible);

    out = solve_feasibility({make_eq({r(1), r(1)}, r(1))}, 2, all_nonneg(2));
    REQUIRE(out.status == LPStatus::Feasible);
    REQUIRE(out.witness.has_value());
    CHECK(dot(*out.witness, {r(1), r(1)}) == 1);
    CHECK((*out.witness)[0] >= 0);
    CHECK((*out.witness)[1] >= 0);

    // common-certificate system for the F pair over the orthant generators
    std::vector<LinearConstraint> cllf{
        make_ge({r(1), r(0)}, r(1)),
        make_ge({r(1), r(1)}, r(1)),
        make_le({r(-2), r(1)}, r(-1)),
        make_le({r(1), r(-2)}, r(-1)),
    };
    out = solve_feasibility(cllf, 2, {});
    REQUIRE(out.status == LPStatus::Feasible);
    for (const auto& c : cllf) CHECK(satisfies(c, *out.witness));

    out = solve_feasibility({}, 3, all_nonneg(3));
    REQUIRE(out.status == LPStatus::Feasible);
    CHECK(*out.witness == RationalVector(3, Rational(0)));
}

TEST_CASE("optimization basics") {
    const auto r = [](int v) { return Rational(v); };

    auto out = solve_lp({r(1)}, Sense::Maximize, {make_le({r(1)}, r(3))}, 1, {});
    REQUIRE(out.status == LPStatus::Optimal);
    CHECK(*out.objective == 3);
    CHECK((*out.witness)[0] == 3);

    out = solve_lp({r(1)}, Sense::Maximize, {make_ge({r(1)}, r(0))}, 1, {});
    CHECK(out.status == LPStatus::Unbounded);

    out = solve_lp({r(1), r(1)}, Sense::Minimize, {make_eq({r(1), r(1)}, r(1))}, 2, all_nonneg(2));
    REQUIRE(out.status == LPStatus::Optimal);
    CHECK(*out.objective == 1);

    out = solve_lp({r(1)}, Sense::Minimize, {make_ge({r(1)}, r(2)), make_le({r(1)}, r(1))}, 1, {});
    CHECK(out.status == LPStatus::Infeasible);
}

TEST_CASE("witnesses are exact and status survives row permutation and scaling") {
    std::mt19937 rng(21);
    std::uniform_int_distribution<int> entry(-3, 3), nc(1, 6), nv(1, 3), rel(0, 2), scale_num(1, 5);

    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t n = static_cast<std::size_t>(nv(rng));
        const std::size_t m = static_cast<std::size_t>(nc(rng));
        std::vector<LinearConstraint> cons;
        for (std::size_t i = 0; i < m; ++i) {
            RationalVector c(n);
            for (auto& v : c) v = Rational(entry(rng));
            const Relation r = static_cast<Relation>(rel(rng));
            cons.push_back({std::move(c), r, Rational(entry(rng))});
        }
        std::vector<std::size_t> nonneg;
        for (std::size_t j = 0; j < n; ++j) {
            if (entry(rng) > 0) nonneg.push_back(j);
        }

        const auto out = solve_feasibility(cons, n, nonneg);
        if (out.status == LPStatus::Feasible) {
            CHECK(satisfies_all(cons, nonneg, *out.witness));
        }

        auto shuffled = cons;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (auto& c : shuffled) {
            const Rational s = make_rational(scale_num(rng), scale_num(rng));
            for (auto& v : c.coeffs) v *= s;
            c.rhs *= s;
        }
        CHECK(solve_feasibility(shuffled, n, nonneg).status == out.status);
    }
}

TEST_CASE("feasibility matches brute-force vertex enumeration") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> entry(-3, 3), nc(1, 6), nv(1, 3), rel(0, 2);

    int feasible_seen = 0, infeasible_seen = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = static_cast<std::size_t>(nv(rng));
        const std::size_t m = static_cast<std::size_t>(nc(rng));
        std::vector<LinearConstraint> cons;
        for (std::size_t i = 0; i < m; ++i) {
            RationalVector c(n);
            for (auto& v : c) v = Rational(entry(rng));
            cons.push_back({std::move(c), static_cast<Relation>(rel(rng)), Rational(entry(rng))});
        }
        std::vector<std::size_t> nonneg;
        for (std::size_t j = 0; j < n; ++j) {
            if (entry(rng) > 0) nonneg.push_back(j);
        }

        const bool lp = solve_feasibility(cons, n, nonneg).status == LPStatus::Feasible;
        const bool oracle = feasible_by_vertex_enumeration(cons, n, nonneg);
        CHECK(lp == oracle);
        (lp ? feasible_seen : infeasible_seen)++;
    }
    CHECK(feasible_seen > 5);
    CHECK(infeasible_seen > 5);
}
