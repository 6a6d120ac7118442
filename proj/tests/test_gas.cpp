#include "shockline/gas.hpp"

#include <doctest.h>

using namespace shockline;

namespace {

ConservedState sample_state() {
    return primitive_to_conserved(PrimitiveState{1.3, 0.7, -0.2, 0.45});
}

Mat4 numerical_jacobian(const GasParams& gas, const ConservedState& s, bool x_dir) {
    Mat4 J;
    const double h = 1e-7;
    for (int j = 0; j < 4; ++j) {
        ConservedState sp = s, sm = s;
        sp.U[j] += h;
        sm.U[j] -= h;
        const Vec4 fp = x_dir ? flux_x(gas, sp) : flux_y(gas, sp);
        const Vec4 fm = x_dir ? flux_x(gas, sm) : flux_y(gas, sm);
        J.col(j) = (fp - fm) / (2 * h);
    }
    return J;
}

}  // namespace

TEST_CASE("kinetic presets") {
    const GasParams mono = kinetic_gas(1);
    CHECK(mono.gamma == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
    CHECK(mono.Gamma == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(mono.mu == 1.0);
    CHECK(mono.eta2 == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
    CHECK(mono.nu == doctest::Approx(2.5).epsilon(1e-15));  // (9*gamma-5)/4
    CHECK(mono.phi == doctest::Approx((2.0 - 2.0 / 3.0) / 2.5).epsilon(1e-14));

    const GasParams di = kinetic_gas(2);
    CHECK(di.gamma == doctest::Approx(7.0 / 5.0).epsilon(1e-15));
    CHECK(di.nu == doctest::Approx((9.0 * 1.4 - 5.0) / 4.0).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(make_gas(1.0, 1, 0, 1, 1), domain_error);   // gamma <= 1
    CHECK_THROWS_AS(make_gas(1.4, 1, -3, 1, 1), domain_error);  // mu <= |eta2|
    CHECK_THROWS_AS(make_gas(1.4, 1, 0, 0, 1), domain_error);   // kappa <= 0
    CHECK_THROWS_AS(make_gas(1.4, 1, 0, 1, -1), domain_error);  // c_v <= 0
    CHECK_THROWS_AS(kinetic_gas(0), domain_error);
}

TEST_CASE("thermodynamics") {
    const GasParams gas = kinetic_gas(1);
    CHECK(pressure(gas, 2.0, 0.3) == doctest::Approx(gas.Gamma * 2.0 * 0.3));
    // The two sound-speed forms agree analytically.
    for (double e : {0.1, 0.3, 1.0})
        CHECK(sound_speed(gas, 1.7, e) ==
              doctest::Approx(sound_speed_from_partials(gas, 1.7, e)).epsilon(1e-13));
}

TEST_CASE("primitive/conserved round trip") {
    const GasParams gas = kinetic_gas(2);
    const PrimitiveState w{1.3, 0.7, -0.2, 0.45};
    const PrimitiveState w2 = conserved_to_primitive(gas, primitive_to_conserved(w));
    CHECK(w2.rho == doctest::Approx(w.rho).epsilon(1e-14));
    CHECK(w2.u == doctest::Approx(w.u).epsilon(1e-14));
    CHECK(w2.v == doctest::Approx(w.v).epsilon(1e-14));
    CHECK(w2.e == doctest::Approx(w.e).epsilon(1e-14));

    ConservedState bad = primitive_to_conserved(w);
    bad.U[3] = 0.0;  // negative internal energy
    CHECK_THROWS_AS(conserved_to_primitive(gas, bad), domain_error);
}

TEST_CASE("flux Jacobians match finite differences") {
    const GasParams gas = kinetic_gas(1);
    const ConservedState s = sample_state();
    CHECK((jacobian_F1(gas, s) - numerical_jacobian(gas, s, true))
              .cwiseAbs()
              .maxCoeff() < 1e-6);
    CHECK((jacobian_F2(gas, s) - numerical_jacobian(gas, s, false))
              .cwiseAbs()
              .maxCoeff() < 1e-6);
}

TEST_CASE("coordinate-change matrices are mutual inverses") {
    const PrimitiveState w{1.3, 0.7, -0.2, 0.45};
    const Mat4 P = prim_to_cons_jacobian(w) * cons_to_prim_jacobian(w);
    CHECK((P - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("characteristic speeds") {
    const GasParams gas = kinetic_gas(1);
    const ConservedState s = sample_state();
    const PrimitiveState w = conserved_to_primitive(gas, s);
    const double c = sound_speed(gas, w.rho, w.e);
    const Vec4 cs = char_speeds(gas, s);
    CHECK(cs[0] == doctest::Approx(w.u - c).epsilon(1e-12));
    CHECK(cs[1] == doctest::Approx(w.u).epsilon(1e-12));
    CHECK(cs[2] == doctest::Approx(w.u).epsilon(1e-12));
    CHECK(cs[3] == doctest::Approx(w.u + c).epsilon(1e-12));
    // They are the eigenvalues of the flux Jacobian.
    const Eigen::Vector4cd ev = jacobian_F1(gas, s).eigenvalues();
    Eigen::Vector4d re = ev.real();
    std::sort(re.data(), re.data() + 4);
    CHECK((re - cs).cwiseAbs().maxCoeff() < 1e-10);
}
