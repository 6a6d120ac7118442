#include "shockline/transition.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>

using namespace shockline;

TEST_CASE("linspace") {
    const auto g = linspace(0.0, 1.0, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 1.0);
    CHECK(g[2] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("sweep_1d: monatomic grid is entirely delta > 0 and error-free") {
    const GasParams gas = kinetic_gas(1);
    const double us = gas.Gamma / (gas.Gamma + 2.0);
    const auto rows = sweep_1d(gas, linspace(us + 1e-3, 1.0 - 1e-3, 50));
    REQUIRE(rows.size() == 50);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].error.empty());
        CHECK(rows[i].delta > 0.0);
        if (i) CHECK(rows[i].u_plus > rows[i - 1].u_plus);  // sorted
    }
    // Weak-shock end is Stable.
    CHECK(rows.back().verdict_1d == Verdict1D::Stable);
}

TEST_CASE("sweep_1d is deterministic bit-for-bit") {
    const GasParams gas = kinetic_gas(2);
    const auto grid = linspace(0.2, 0.9, 16);
    const auto a = sweep_1d(gas, grid);
    const auto b = sweep_1d(gas, grid);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::memcmp(&a[i].delta, &b[i].delta, sizeof(double)) == 0);
        CHECK(std::memcmp(&a[i].delta_hat, &b[i].delta_hat, sizeof(double)) == 0);
    }
}

TEST_CASE("find_transition: kinetic gases have no delta_hat sign change") {
    for (int n : {1, 2}) {
        const GasParams gas = kinetic_gas(n);
        const double us = gas.Gamma / (gas.Gamma + 2.0);
        const TransitionResult tr =
            find_transition(gas, us + 1e-3, 1.0 - 1e-3, 1e-12);
        CHECK_FALSE(tr.found);
        CHECK(tr.sign_lo == tr.sign_hi);
        CHECK(tr.sign_lo > 0.0);
    }
}

TEST_CASE("find_transition: large-phi high-gamma gas has a genuine root") {
    // gamma = 3, phi = (2 mu + eta2)/nu = 20: delta_hat changes sign in u+.
    const GasParams gas = make_gas(3.0, 1.0, 0.0, 0.1, 1.0);
    const double us = gas.Gamma / (gas.Gamma + 2.0);
    const TransitionResult tr = find_transition(gas, us + 1e-3, 1.0 - 1e-3, 1e-10);
    REQUIRE(tr.found);
    CHECK(tr.residual < 1e-10);
    CHECK(tr.sign_lo * tr.sign_hi < 0.0);
    // Refinement stability: a shrunken bracket around the root reproduces it.
    const TransitionResult tr2 = find_transition(
        gas, tr.u_star_transition - 0.02, tr.u_star_transition + 0.02, 1e-10);
    REQUIRE(tr2.found);
    CHECK(std::abs(tr2.u_star_transition - tr.u_star_transition) < 1e-8);
}

TEST_CASE("find_transition: argument validation") {
    const GasParams gas = kinetic_gas(1);
    CHECK_THROWS_AS(find_transition(gas, 0.5, 0.4, 1e-10), domain_error);
    CHECK_THROWS_AS(find_transition(gas, 0.3, 0.5, 0.0), domain_error);
}

TEST_CASE("sweep_md: weak shocks avoid the axis; unstable points are gated") {
    const GasParams gas = kinetic_gas(1);
    CurveParams cp;
    cp.tau_max = 40.0;
    cp.n_samples = 150;
    cp.refine_tol = 1e-6;
    const auto rows = sweep_md(gas, {0.9, 0.95}, cp);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
        CHECK(r.error.empty());
        REQUIRE(r.eta_curve_verdict.has_value());
        CHECK(*r.eta_curve_verdict == CurveVerdict::Avoids);
    }
    // 1D-unstable points are skipped with a recorded reason.
    const GasParams hard = make_gas(3.0, 1.0, 0.0, 0.1, 1.0);
    const double us = hard.Gamma / (hard.Gamma + 2.0);
    const auto gated = sweep_md(hard, {us + 1e-3}, cp);
    REQUIRE(gated.size() == 1);
    CHECK(gated[0].verdict_1d == Verdict1D::Unstable);
    CHECK_FALSE(gated[0].eta_curve_verdict.has_value());
    CHECK_FALSE(gated[0].error.empty());
}

TEST_CASE("cross_validate: Evans index agrees with the algebraic sign") {
    const GasParams gas = kinetic_gas(2);
    const double us = gas.Gamma / (gas.Gamma + 2.0);
    for (double u : {0.9, us + 0.02}) {
        const double om = linearization_minus(gas, endstates(gas, u)).omega_minus;
        const CrossValidationReport rep = cross_validate(gas, {u}, {8.0 / om}, false);
        CHECK(rep.n_mismatch == 0);
        CHECK(rep.n_match == 1);
        for (const auto& r : rep.rows) {
            CHECK(r.error.empty());
            CHECK(r.match);
            CHECK(r.evans_index == r.sign_dd);
        }
    }
}
