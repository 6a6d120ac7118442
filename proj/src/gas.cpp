#include "shockline/gas.hpp"

#include <cmath>

namespace shockline {

GasParams make_gas(double gamma, double mu, double eta2, double kappa, double c_v) {
    if (!(gamma > 1.0))
        throw domain_error("make_gas: gamma must exceed 1 (got " + std::to_string(gamma) + ")");
    if (!(mu > std::abs(eta2)))
        throw domain_error("make_gas: require mu > |eta2| >= 0");
    if (!(kappa > 0.0)) throw domain_error("make_gas: kappa must be positive");
    if (!(c_v > 0.0)) throw domain_error("make_gas: c_v must be positive");
    GasParams g;
    g.gamma = gamma;
    g.Gamma = gamma - 1.0;
    g.mu = mu;
    g.eta2 = eta2;
    g.kappa = kappa;
    g.c_v = c_v;
    g.nu = kappa / c_v;
    g.phi = (2.0 * mu + eta2) / g.nu;
    return g;
}

GasParams kinetic_gas(int n_atoms) {
    if (n_atoms < 1) throw domain_error("kinetic_gas: n_atoms must be >= 1");
    const double n = static_cast<double>(n_atoms);
    const double gamma = (2.0 * n + 3.0) / (2.0 * n + 1.0);
    const double mu = 1.0;
    const double nu = mu * (9.0 * gamma - 5.0) / 4.0;
    const double c_v = 1.0;
    return make_gas(gamma, mu, -2.0 / 3.0 * mu, nu * c_v, c_v);
}

double pressure(const GasParams& gas, double rho, double e) {
    if (!(rho > 0.0)) throw domain_error("pressure: rho must be positive");
    if (!(e > 0.0)) throw domain_error("pressure: e must be positive");
    return gas.Gamma * rho * e;
}

double sound_speed(const GasParams& gas, double /*rho*/, double e) {
    if (!(e > 0.0)) throw domain_error("sound_speed: e must be positive");
    return std::sqrt(gas.Gamma * (gas.Gamma + 1.0) * e);
}

double sound_speed_from_partials(const GasParams& gas, double rho, double e) {
    const double p = pressure(gas, rho, e);
    const double p_rho = gas.Gamma * e;    // at fixed e
    const double p_e = gas.Gamma * rho;    // at fixed rho
    return std::sqrt(p * p_e / (rho * rho) + p_rho);
}

ConservedState primitive_to_conserved(const PrimitiveState& w) {
    ConservedState s;
    s.U << w.rho, w.rho * w.u, w.rho * w.v,
        w.rho * (w.e + 0.5 * (w.u * w.u + w.v * w.v));
    return s;
}

PrimitiveState conserved_to_primitive(const GasParams&, const ConservedState& s) {
    if (!(s.rho() > 0.0)) throw domain_error("conserved_to_primitive: rho must be positive");
    PrimitiveState w;
    w.rho = s.rho();
    w.u = s.m1() / s.rho();
    w.v = s.m2() / s.rho();
    w.e = s.Etot() / s.rho() - 0.5 * (w.u * w.u + w.v * w.v);
    if (!(w.e > 0.0))
        throw domain_error("conserved_to_primitive: internal energy nonpositive after "
                           "kinetic-energy subtraction");
    return w;
}

Vec4 flux_x(const GasParams& gas, const ConservedState& s) {
    const PrimitiveState w = conserved_to_primitive(gas, s);
    const double p = pressure(gas, w.rho, w.e);
    Vec4 f;
    f << s.m1(), s.m1() * w.u + p, s.m1() * w.v, w.u * (s.Etot() + p);
    return f;
}

Vec4 flux_y(const GasParams& gas, const ConservedState& s) {
    const PrimitiveState w = conserved_to_primitive(gas, s);
    const double p = pressure(gas, w.rho, w.e);
    Vec4 f;
    f << s.m2(), s.m2() * w.u, s.m2() * w.v + p, w.v * (s.Etot() + p);
    return f;
}

Mat4 prim_to_cons_jacobian(const PrimitiveState& w) {
    Mat4 S;
    S << 1, 0, 0, 0,
        w.u, w.rho, 0, 0,
        w.v, 0, w.rho, 0,
        w.e + 0.5 * (w.u * w.u + w.v * w.v), w.rho * w.u, w.rho * w.v, w.rho;
    return S;
}

Mat4 cons_to_prim_jacobian(const PrimitiveState& w) {
    const double r = w.rho;
    Mat4 Sinv;
    Sinv << 1, 0, 0, 0,
        -w.u / r, 1.0 / r, 0, 0,
        -w.v / r, 0, 1.0 / r, 0,
        (-w.e + 0.5 * (w.u * w.u + w.v * w.v)) / r, -w.u / r, -w.v / r, 1.0 / r;
    return Sinv;
}

namespace {

// Quasilinear convective matrices in primitive variables (rho, u, v, e):
// V_t + (u*Id + M1) V_x + (v*Id + M2) V_y = 0 for the hyperbolic part.
Mat4 convective_M1(const GasParams& gas, const PrimitiveState& w) {
    const double p = pressure(gas, w.rho, w.e);
    const double p_rho = gas.Gamma * w.e;
    const double p_e = gas.Gamma * w.rho;
    Mat4 M = Mat4::Zero();
    M(0, 1) = w.rho;
    M(1, 0) = p_rho / w.rho;
    M(1, 3) = p_e / w.rho;
    M(3, 1) = p / w.rho;
    return M;
}

Mat4 convective_M2(const GasParams& gas, const PrimitiveState& w) {
    const double p = pressure(gas, w.rho, w.e);
    const double p_rho = gas.Gamma * w.e;
    const double p_e = gas.Gamma * w.rho;
    Mat4 M = Mat4::Zero();
    M(0, 2) = w.rho;
    M(2, 0) = p_rho / w.rho;
    M(2, 3) = p_e / w.rho;
    M(3, 2) = p / w.rho;
    return M;
}

}  // namespace

Mat4 jacobian_F1(const GasParams& gas, const ConservedState& s) {
    if (s.rho() == 0.0) throw domain_error("jacobian_F1: singular coordinate change (rho = 0)");
    const PrimitiveState w = conserved_to_primitive(gas, s);
    const Mat4 S = prim_to_cons_jacobian(w);
    const Mat4 Sinv = cons_to_prim_jacobian(w);
    return S * (w.u * Mat4::Identity() + convective_M1(gas, w)) * Sinv;
}

Mat4 jacobian_F2(const GasParams& gas, const ConservedState& s) {
    if (s.rho() == 0.0) throw domain_error("jacobian_F2: singular coordinate change (rho = 0)");
    const PrimitiveState w = conserved_to_primitive(gas, s);
    const Mat4 S = prim_to_cons_jacobian(w);
    const Mat4 Sinv = cons_to_prim_jacobian(w);
    return S * (w.v * Mat4::Identity() + convective_M2(gas, w)) * Sinv;
}

Vec4 char_speeds(const GasParams& gas, const ConservedState& s) {
    const PrimitiveState w = conserved_to_primitive(gas, s);
    const double c = sound_speed(gas, w.rho, w.e);
    Vec4 a;
    a << w.u - c, w.u, w.u, w.u + c;
    return a;
}

}  // namespace shockline
