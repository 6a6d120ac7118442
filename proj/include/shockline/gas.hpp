#ifndef SHOCKLINE_GAS_HPP
#define SHOCKLINE_GAS_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace shockline {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

// Domain/validation failures (bad parameters, out-of-range states).
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failures (lost convergence, ill-conditioning, truncation).
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thermodynamic and viscous constants of a gamma-law gas.
// nu = kappa/c_v and phi = (2*mu + eta2)/nu are derived.
struct GasParams {
    double gamma;  // adiabatic index, > 1
    double Gamma;  // gamma - 1
    double mu;     // first (dynamic) viscosity
    double eta2;   // second viscosity
    double kappa;  // heat conductivity
    double c_v;    // specific heat at constant volume
    double nu;     // kappa / c_v
    double phi;    // (2*mu + eta2) / nu
};

struct PrimitiveState {
    double rho;  // density > 0
    double u;    // normal velocity
    double v;    // transverse velocity
    double e;    // internal energy density > 0
};

// (rho, rho*u, rho*v, rho*(e + u^2/2 + v^2/2))
struct ConservedState {
    Vec4 U;

    double rho() const { return U[0]; }
    double m1() const { return U[1]; }
    double m2() const { return U[2]; }
    double Etot() const { return U[3]; }
};

GasParams make_gas(double gamma, double mu, double eta2, double kappa, double c_v);

// Rarified-gas kinetic preset: gamma = (2n+3)/(2n+1), mu = 1 (scale choice),
// eta2 = -2mu/3, c_v = 1, nu = mu*(9*gamma-5)/4, kappa = nu*c_v.
GasParams kinetic_gas(int n_atoms);

double pressure(const GasParams& gas, double rho, double e);
double sound_speed(const GasParams& gas, double rho, double e);
// Alternative form sqrt(p*p_e/rho^2 + p_rho); equals sound_speed analytically.
double sound_speed_from_partials(const GasParams& gas, double rho, double e);

ConservedState primitive_to_conserved(const PrimitiveState& w);
PrimitiveState conserved_to_primitive(const GasParams& gas, const ConservedState& s);

Vec4 flux_x(const GasParams& gas, const ConservedState& s);
Vec4 flux_y(const GasParams& gas, const ConservedState& s);

// Flux Jacobians in conservative variables, built by conjugating the
// primitive-variable quasilinear form: dF1 = S (u*Id + M1) S^{-1}, and
// analogously dF2 with (v*Id + M2).
Mat4 jacobian_F1(const GasParams& gas, const ConservedState& s);
Mat4 jacobian_F2(const GasParams& gas, const ConservedState& s);

// Eigenvalues of jacobian_F1, sorted ascending: (u-c, u, u, u+c).
Vec4 char_speeds(const GasParams& gas, const ConservedState& s);

// Coordinate-change matrices d(conserved)/d(primitive) and its inverse.
Mat4 prim_to_cons_jacobian(const PrimitiveState& w);
Mat4 cons_to_prim_jacobian(const PrimitiveState& w);

}  // namespace shockline

#endif
