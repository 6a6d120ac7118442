#include "shockline/profile.hpp"

#include <doctest.h>

#include <cmath>

using namespace shockline;

TEST_CASE("endstates: frozen values, monatomic preset") {
    const GasParams gas = kinetic_gas(1);  // Gamma = 2/3, u* = 1/4
    const ShockData sd = endstates(gas, 0.5);
    CHECK(sd.u_star == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(sd.e_minus == doctest::Approx(0.3).epsilon(1e-13));
    CHECK(sd.e_plus == doctest::Approx(0.525).epsilon(1e-13));
    CHECK(sd.rho_plus == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("endstates: domain and limits") {
    const GasParams gas = kinetic_gas(1);
    CHECK_THROWS_AS(endstates(gas, 0.25), domain_error);   // u+ = u*
    CHECK_THROWS_AS(endstates(gas, 1.0001), domain_error); // u+ > 1
    // Regular at u+ = 1: e = 1/(Gamma(Gamma+1)).
    const ShockData one = endstates(gas, 1.0);
    const double G = gas.Gamma;
    CHECK(one.e_minus == doctest::Approx(1.0 / (G * (G + 1.0))).epsilon(1e-13));
    CHECK(one.e_plus == doctest::Approx(one.e_minus).epsilon(1e-13));
    // Strong-shock endpoint: e+ -> 2/(Gamma+2)^2 = 0.28125 for gamma = 5/3.
    const ShockData strong = endstates(gas, 0.25 + 1e-6);
    CHECK(strong.e_plus == doctest::Approx(2.0 / ((G + 2.0) * (G + 2.0))).epsilon(1e-4));
    CHECK(2.0 / ((G + 2.0) * (G + 2.0)) == doctest::Approx(0.28125).epsilon(1e-12));
}

TEST_CASE("endstates: Rankine-Hugoniot residual on a grid, both presets") {
    for (int n : {1, 2}) {
        const GasParams gas = kinetic_gas(n);
        const double us = gas.Gamma / (gas.Gamma + 2.0);
        for (int i = 0; i < 25; ++i) {
            const double u = us + 1e-3 + (1.0 - us - 2e-3) * i / 24.0;
            const ShockData sd = endstates(gas, u);
            const Vec4 rh = flux_x(gas, sd.U_plus) - flux_x(gas, sd.U_minus);
            CHECK(rh.cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("linearization at U_-: frozen eigenpair, monatomic u+ = 0.5") {
    const GasParams gas = kinetic_gas(1);
    const ShockData sd = endstates(gas, 0.5);
    const AsymptoticData a = linearization_minus(gas, sd);
    CHECK(a.omega_minus == doctest::Approx(0.27639320225).epsilon(1e-9));
    CHECK(a.omega_plus == doctest::Approx(0.72360679775).epsilon(1e-9));
    // Closed-form eigenvalues agree with a direct eigendecomposition.
    const Eigen::Vector2cd ev = a.M_minus.eigenvalues();
    const double lo = std::min(std::real(ev[0]), std::real(ev[1]));
    const double hi = std::max(std::real(ev[0]), std::real(ev[1]));
    CHECK(a.omega_minus == doctest::Approx(lo).epsilon(1e-12));
    CHECK(a.omega_plus == doctest::Approx(hi).epsilon(1e-12));
    // Eigenvector residual of the closed form.
    CHECK((a.M_minus * a.s_minus - a.omega_minus * a.s_minus).norm() < 1e-12);
    CHECK((a.M_minus * a.s_plus - a.omega_plus * a.s_plus).norm() < 1e-12);
}

TEST_CASE("asymptotic direction S: frozen value and strong-shock branch") {
    const GasParams gas = kinetic_gas(1);
    const ShockData sd = endstates(gas, 0.5);
    const AsymptoticData a = asymptotic_direction(gas, sd);
    CHECK(a.S[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a.S[1] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(a.S[2] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(a.S[3] == doctest::Approx(0.4472135955).epsilon(1e-8));

    // Strong-shock limit branch is continuous with the generic formula
    // evaluated very near u*.
    const ShockData near_star = endstates(gas, sd.u_star + 1e-8);
    const AsymptoticData gen = asymptotic_direction(gas, near_star);
    const AsymptoticData lim = asymptotic_direction(gas, near_star, true);
    CHECK((gen.S - lim.S).norm() < 1e-5);
}

TEST_CASE("solve_profile: convergence, monotonicity, anchoring") {
    const GasParams gas = kinetic_gas(1);
    const ShockData sd = endstates(gas, 0.5);
    const AsymptoticData a = linearization_minus(gas, sd);
    const double L = 12.0 / a.omega_minus;
    const ProfileSolution prof = solve_profile(gas, sd, L, 1e-10);

    // Endpoint errors at the resolved grid ends.
    const Vec2 Uin(1.0, sd.e_minus), Uout(sd.u_plus, sd.e_plus);
    CHECK((prof.values.front() - Uin).norm() < 1e-8);
    CHECK((prof.values.back() - Uout).norm() < 1e-8);
    CHECK(prof.L >= L);

    // u_hat decreases monotonically; anchor at x = 0.
    for (std::size_t i = 0; i + 1 < prof.grid.size(); ++i)
        CHECK(prof.values[i][0] >= prof.values[i + 1][0] - 1e-14);
    CHECK(prof.value_at(0.0)[0] ==
          doctest::Approx(0.5 * (1.0 + sd.u_plus)).epsilon(1e-9));

    // Interpolant consistency: value_at/derivative_at vs the ODE right side.
    const Vec2 mid = prof.value_at(1.234);
    const Vec2 dmid = prof.derivative_at(1.234);
    CHECK((dmid - profile_rhs(gas, sd, mid)).norm() < 1e-8);

    // Tail decay rate within 2% of omega_-.
    CHECK(std::abs(prof.tail_rate - a.omega_minus) < 0.02 * a.omega_minus);
}

TEST_CASE("profile tail direction matches the asymptotic direction S") {
    const GasParams gas = kinetic_gas(1);
    for (double up : {0.5, 0.7}) {
        const ShockData sd = endstates(gas, up);
        const AsymptoticData a = asymptotic_direction(gas, sd);
        const ProfileSolution prof = solve_profile(gas, sd, 30.0, 1e-12);
        const Vec4 Sn = a.S.normalized();
        const double angle = std::acos(std::min(1.0, std::abs(prof.tail_direction.dot(Sn))));
        CHECK(angle < 1e-5);
    }
}

TEST_CASE("fit_tail recovers a synthetic exponential signal") {
    std::vector<double> xs;
    std::vector<Vec4> dUs;
    const Vec4 dir = Vec4(1.0, 0.0, 0.0, 0.5).normalized();
    for (int i = 0; i < 40; ++i) {
        const double x = -30.0 + 0.5 * i;
        xs.push_back(x);
        dUs.push_back(std::exp(0.31 * x) * dir);
    }
    const TailFit tf = fit_tail(xs, dUs);
    CHECK(tf.rate == doctest::Approx(0.31).epsilon(1e-10));
    CHECK(std::abs(tf.direction.dot(dir)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("profile_U3 restriction is consistent with the 4-variable state") {
    const GasParams gas = kinetic_gas(2);
    const ShockData sd = endstates(gas, 0.4);
    const ProfileSolution prof = solve_profile(gas, sd, 20.0, 1e-12);
    const double x = -2.5;
    const Vec2 ue = prof.value_at(x);
    const Eigen::Vector3d U3 = profile_U3(prof, x);
    CHECK(U3[0] == doctest::Approx(1.0 / ue[0]).epsilon(1e-13));
    CHECK(U3[1] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(U3[2] == doctest::Approx(ue[1] / ue[0] + 0.5 * ue[0]).epsilon(1e-13));
    // Derivative by central differences of profile_U3.
    const double h = 1e-6;
    const Eigen::Vector3d dnum = (profile_U3(prof, x + h) - profile_U3(prof, x - h)) / (2 * h);
    CHECK((profile_U3_deriv(prof, x) - dnum).norm() < 1e-7);
}

TEST_CASE("solve_profile rejects the degenerate shock u+ = 1") {
    const GasParams gas = kinetic_gas(1);
    const ShockData sd = endstates(gas, 1.0);
    CHECK_THROWS_AS(solve_profile(gas, sd, 10.0, 1e-10), domain_error);
}
