#ifndef SHOCKLINE_PROFILE_HPP
#define SHOCKLINE_PROFILE_HPP

#include "shockline/gas.hpp"

#include <vector>

namespace shockline {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

// Normalized standing-shock endstates with m = rho_- = u_- = 1, v = 0,
// parametrized by u_plus in (u_star, 1].
struct ShockData {
    double u_plus;
    double u_star;   // Gamma / (Gamma + 2)
    double alpha;    // (Gamma + 2 - Gamma*u_plus) / (u_plus - u_star)
    double e_minus;
    double e_plus;
    double rho_plus; // 1 / u_plus
    ConservedState U_minus;
    ConservedState U_plus;
};

// Connecting orbit (u_hat, e_hat)(x) on [-L, L], anchored so that
// u_hat(0) = (1 + u_plus)/2.  Values outside the resolved range are clamped
// to the endstates (tails there are below integrator tolerance).
struct ProfileSolution {
    std::vector<double> grid;          // strictly increasing
    std::vector<Vec2> values;          // (u_hat, e_hat) per node
    std::vector<Vec2> derivs;          // exact RHS at each node
    double L = 0.0;
    std::size_t anchor = 0;            // node closest to x = 0
    double tail_rate = 0.0;            // fitted decay rate toward -inf
    Vec4 tail_direction = Vec4::Zero();// fitted unit direction of U_hat'
    ShockData shock;
    GasParams gas;

    // Cubic Hermite interpolation of (u_hat, e_hat) and its derivative.
    Vec2 value_at(double x) const;
    Vec2 derivative_at(double x) const;
};

ShockData endstates(const GasParams& gas, double u_plus);

// RHS of the profile ODE:
//   u' = (2mu+eta2)^{-1} ((u-1) + Gamma(e/u - e_minus))
//   e' = nu^{-1} ((e - e_minus) - (u-1)^2/2 + (u-1)*Gamma*e_minus)
Vec2 profile_rhs(const GasParams& gas, const ShockData& shock, const Vec2& ue);

ProfileSolution solve_profile(const GasParams& gas, const ShockData& shock,
                              double L, double tol);

// Linearization of the profile ODE at (1, e_minus).
struct AsymptoticData {
    Mat2 M_minus;
    double omega_minus = 0.0;
    double omega_plus = 0.0;
    Vec2 s_minus = Vec2::Zero();
    Vec2 s_plus = Vec2::Zero();
    Vec2 s = Vec2::Zero();        // unit tangent of (u_hat, e_hat) at -inf
    Vec4 S = Vec4::Zero();        // lim U_hat'/|U_hat'|, scaled so S[0] = 1
};

AsymptoticData linearization_minus(const GasParams& gas, const ShockData& shock);

// Full asymptotic data including the conservative-variable direction S.
// The strong-shock branch (requested or triggered by eigenvalue merging)
// evaluates the e_minus -> 0 limit of the slow eigenvector directly.
AsymptoticData asymptotic_direction(const GasParams& gas, const ShockData& shock,
                                    bool strong_shock_limit = false);

struct TailFit {
    Vec4 direction;  // unit 4-vector in conservative variables
    double rate;     // fitted decay rate (should match omega_minus)
};

// Least-squares fit of U_hat'/|U_hat'| and the decay rate from the orbit's
// last decades of decay toward -inf.
TailFit profile_tail_direction(const ProfileSolution& profile);

// Fit from raw samples (x_i, U'(x_i)); exposed for synthetic-signal tests.
TailFit fit_tail(const std::vector<double>& xs, const std::vector<Vec4>& dUs);

// 3-component 1D conserved restriction (rho, m, rho*E) of the profile and
// its x-derivative, used by the Evans engine.
Eigen::Vector3d profile_U3(const ProfileSolution& profile, double x);
Eigen::Vector3d profile_U3_deriv(const ProfileSolution& profile, double x);

}  // namespace shockline

#endif
