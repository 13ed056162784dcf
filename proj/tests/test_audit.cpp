#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gptaudit/audit.hpp"
#include "gptaudit/geometry.hpp"
#include "gptaudit/models.hpp"
#include "oracles.hpp"

using namespace gptaudit;

TEST_CASE("IS audit verdicts") {
    const auto classical = audit_is(classical_model(3));
    CHECK(classical.satisfied);
    CHECK(classical.max_asymmetry == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(classical.pairs.size() == 3);

    const auto pentagon = audit_is(polygon_model(5));
    CHECK_FALSE(pentagon.satisfied);
    bool neighbor_found = false;
    for (const auto& p : pentagon.pairs) {
        if (p.state_a == "w0" && p.state_b == "w1") {
            neighbor_found = true;
            CHECK_FALSE(p.is_satisfied);
            CHECK(p.pair_asymmetry ==
                  doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-9));
        }
        if (p.state_a == "w0" && p.state_b == "w2") {
            CHECK(p.is_satisfied);  // perfectly distinguishable pair
        }
    }
    CHECK(neighbor_found);
    CHECK(pentagon.max_asymmetry == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-9));

    const auto qubit = audit_is(qubit_model());
    CHECK(qubit.satisfied);
    CHECK(qubit.pairs.size() == 50);
    CHECK(qubit.max_asymmetry < 1e-9);

    for (int n = 5; n <= 16; ++n) {
        CHECK_FALSE(audit_is(polygon_model(n)).satisfied);
    }
    CHECK(audit_is(squit_model()).satisfied);  // pure pairs all discriminate perfectly
    CHECK_THROWS_AS(audit_is(polygon_model(5), -1.0), std::invalid_argument);
}

TEST_CASE("policy dominance and tolerance monotonicity") {
    for (int n : {5, 6, 8}) {
        const auto model = polygon_model(n);
        const auto any = audit_is(model, 1e-9, Policy::pure_minimizers_any);
        const auto all = audit_is(model, 1e-9, Policy::pure_minimizers_all);
        REQUIRE(any.pairs.size() == all.pairs.size());
        for (std::size_t i = 0; i < any.pairs.size(); ++i) {
            if (all.pairs[i].is_satisfied) CHECK(any.pairs[i].is_satisfied);
        }

        const auto loose = audit_is(model, 1e-3, Policy::pure_minimizers_any);
        for (std::size_t i = 0; i < any.pairs.size(); ++i) {
            if (any.pairs[i].is_satisfied) CHECK(loose.pairs[i].is_satisfied);
        }
    }
    CHECK(to_string(Policy::pure_minimizers_any) == std::string("any"));
    CHECK(policy_from_string("all") == Policy::pure_minimizers_all);
    CHECK_THROWS_AS(policy_from_string("some"), std::invalid_argument);
}

TEST_CASE("squit GIS audit") {
    const auto squit = squit_model();
    const auto rep = audit_gis(squit, {0.6, 0.75, 0.9});
    CHECK_FALSE(rep.satisfied);
    for (double p : {0.6, 0.75, 0.9}) {
        bool violated = false;
        for (const auto& row : rep.rows) {
            if (std::abs(row.p - p) < 1e-15 && !row.satisfied) violated = true;
        }
        CHECK(violated);
    }

    // the canonical neighbor-mix pair at p = 0.75: symmetric 0.1875 vs minimum 0.125
    const auto w = mix_states(squit, 1, 2, 0.75);
    const auto wp = mix_states(squit, 0, 1, 0.75);
    CHECK(mesd_polytope(squit, w, wp).pE == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(best_symmetric_error(squit, w, wp) == doctest::Approx(0.1875).epsilon(1e-12));

    // p = 1/2: symmetric and minimal coincide (evaluated, not assumed)
    const auto wh = mix_states(squit, 1, 2, 0.5);
    const auto wph = mix_states(squit, 0, 1, 0.5);
    const double min_half = mesd_polytope(squit, wh, wph).pE;
    const double sym_half = best_symmetric_error(squit, wh, wph);
    CHECK(min_half == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(sym_half == doctest::Approx(min_half).epsilon(1e-9));

    CHECK_THROWS_AS(audit_gis(squit, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(audit_gis(squit, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(audit_gis(spekkens_model(), {0.5}), std::invalid_argument);
}

TEST_CASE("qubit and classical GIS audits") {
    const auto q = audit_gis(qubit_model(), {0.6, 0.75, 0.9});
    CHECK(q.satisfied);
    CHECK(q.max_asymmetry < 1e-9);
    CHECK(q.max_gap <= 1e-9);

    // the bit has no three distinct pure states, so the shared-endpoint
    // pattern produces no pairs at all
    const auto bit = audit_gis(classical_model(2), {0.75});
    CHECK(bit.rows.empty());
    CHECK(bit.satisfied);

    // the trit pair (0,p,1-p) vs (p,1-p,0) has a unique asymmetric optimum:
    // minimum 0.125 at p=0.75 (the total-variation value) against 0.1875 for
    // the best symmetric measurement, e = 0.75*(0,1,1) + 0.25*(0,0,1)
    const auto trit = classical_model(3);
    const auto w = mix_states(trit, 1, 2, 0.75);
    const auto wp = mix_states(trit, 0, 1, 0.75);
    CHECK(mesd_polytope(trit, w, wp).pE == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(best_symmetric_error(trit, w, wp) == doctest::Approx(0.1875).epsilon(1e-12));
    const auto c = audit_gis(trit, {0.75});
    CHECK_FALSE(c.rows.empty());
    CHECK_FALSE(c.satisfied);
}

TEST_CASE("spekkens IS audit") {
    const auto rep = audit_spekkens();
    CHECK_FALSE(rep.satisfied);
    CHECK(rep.pairs.size() == 15);

    int perfect = 0, violated = 0;
    for (const auto& p : rep.pairs) {
        if (p.result.pE <= 1e-12) {
            ++perfect;
            CHECK(p.is_satisfied);
        } else {
            CHECK(p.result.pE == doctest::Approx(0.25).epsilon(1e-12));
            CHECK_FALSE(p.is_satisfied);
            ++violated;
        }
    }
    CHECK(perfect == 3);  // the disjoint-support pairs
    CHECK(violated == 12);
    bool found = false;
    for (const auto& p : rep.pairs) {
        if (p.state_a == "1v2" && p.state_b == "3v4") {
            found = true;
            CHECK(p.is_satisfied);
        }
    }
    CHECK(found);
}

TEST_CASE("odd sweep") {
    const auto rows = sweep_odd(2, 10);
    REQUIRE(rows.size() == 9);
    CHECK(rows[0].m == 2);
    CHECK(rows[0].n == 5);
    CHECK(rows[0].abs_diff == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-12));
    CHECK(rows[1].abs_diff < rows[0].abs_diff);  // n=7 below the pentagon value
    for (const auto& r : rows) CHECK(r.abs_diff > 0.0);

    // verified structure: strict decrease within each polygon class mod 4,
    // and the n = 4j+3 class sits below its even-m neighbors
    const auto full = sweep_odd(2, 50);
    for (std::size_t i = 2; i < full.size(); ++i) {
        CHECK(full[i].abs_diff < full[i - 2].abs_diff);
    }
    for (std::size_t i = 1; i + 1 < full.size(); i += 2) {
        CHECK(full[i].abs_diff < full[i - 1].abs_diff);
        CHECK(full[i].abs_diff < full[i + 1].abs_diff);
    }

    CHECK_THROWS_AS(sweep_odd(1, 5), std::invalid_argument);
    CHECK_THROWS_AS(sweep_odd(3, 2), std::invalid_argument);
}

TEST_CASE("even sweeps") {
    const auto rows1 = sweep_even_case1(2, 4);
    REQUIRE(rows1.size() == 6);
    CHECK(rows1[0].m == 2);
    CHECK(rows1[0].l == 1);
    CHECK(rows1[0].abs_diff == doctest::Approx((2.0 - std::sqrt(2.0)) / 2.0).epsilon(1e-12));
    int idx = 0;
    for (int m = 2; m <= 4; ++m) {
        for (int l = 1; l <= m - 1; ++l) {
            CHECK(rows1[idx].m == m);
            CHECK(rows1[idx].l == l);
            CHECK(rows1[idx].n == 4 * m);
            CHECK(rows1[idx].abs_diff > 1e-6);
            ++idx;
        }
    }

    const auto rows2 = sweep_even_case2(1, 3);
    REQUIRE(rows2.size() == 6);
    CHECK(rows2[0].n == 6);
    CHECK(rows2[0].pE == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(rows2[0].min_pure_asymmetry == doctest::Approx(0.5).epsilon(1e-12));
    for (const auto& r : rows2) CHECK(r.min_pure_asymmetry > 1e-6);

    CHECK_THROWS_AS(sweep_even_case1(1, 4), std::invalid_argument);
    CHECK_THROWS_AS(sweep_even_case2(0, 4), std::invalid_argument);
}

TEST_CASE("hexagon degeneracy under the pure-minimizer policy") {
    const auto hexagon = polygon_model(6);
    const auto rep = audit_is(hexagon);
    bool neighbor_checked = false;
    for (const auto& p : rep.pairs) {
        if (p.state_a == "w0" && p.state_b == "w1") {
            neighbor_checked = true;
            CHECK_FALSE(p.is_satisfied);  // despite the symmetric mixed minimizer
            CHECK(p.pair_asymmetry == doctest::Approx(0.5).epsilon(1e-12));
            CHECK(p.result.min_asymmetry() < 1e-12);  // the mixed family reaches symmetry
        }
    }
    CHECK(neighbor_checked);
    CHECK_FALSE(rep.satisfied);
}
