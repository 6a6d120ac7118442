#ifndef SHOCKLINE_EVANS_HPP
#define SHOCKLINE_EVANS_HPP

#include "shockline/gas.hpp"
#include "shockline/profile.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace shockline {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat5c = Eigen::Matrix<cplx, 5, 5>;
using Vec5c = Eigen::Matrix<cplx, 5, 1>;
using Vec10c = Eigen::Matrix<cplx, 10, 1>;
using Mat10c = Eigen::Matrix<cplx, 10, 10>;

// 1D reduction: 3 conserved variables (rho, m, rho E) plus parabolic rank 2;
// the transverse velocity decouples at zero transverse frequency into a
// damped scalar mode (see tests).  Evans state Z in C^5 ordered
// (Z1_a, Z1_b, Z2, Z3_a, Z3_b).
struct EvansSystem {
    GasParams gas;
    const ProfileSolution* profile;  // non-owning
    cplx lambda;

    Mat5c G_at(double x) const;   // coefficient matrix along the profile
    Mat5c G_minus() const;        // constant limit at -inf
    Mat5c G_plus() const;         // constant limit at +inf
};

EvansSystem build_system(const GasParams& gas, const ProfileSolution& profile,
                         cplx lambda);

// 3x3 viscous coefficient matrix B(U) (so that the viscous flux is B U_x)
// and the inviscid Jacobian of the reduced 1D system.
Mat3 viscous_B(const GasParams& gas, const Vec3& U);
Mat3 jacobian_F1_3(const GasParams& gas, const Vec3& U);

enum class BoundaryType { DirichletInflow, DirichletOutflow };

// Constant kernel basis E0 of the boundary condition in Z-coordinates.
Eigen::Matrix<cplx, 5, Eigen::Dynamic> boundary_kernel(BoundaryType type);

// Deterministic eigen-basis of the stable ('stable' = true) or unstable
// invariant subspace of a 5x5 matrix, with the group's eigenvalue sum.
struct Subspace {
    Eigen::Matrix<cplx, 5, Eigen::Dynamic> columns;
    cplx eigenvalue_sum;
};
Subspace invariant_subspace(const Mat5c& G, bool stable, int k);

// Exterior-power machinery on C^5.
Mat10c exterior_lift(const Mat5c& G, int k);             // k in {2, 3}
Vec10c wedge(const Eigen::Matrix<cplx, 5, Eigen::Dynamic>& V);  // k columns
cplx wedge_pair(const Vec10c& omega2, const Vec10c& omega3);    // full 5-form

// Integrate omega' = (Lift_k G(x) - shift I) omega from x0 to x1 with
// periodic renormalization; returns the final unit wedge and the log of the
// accumulated scale.
struct WedgeResult {
    Vec10c omega;
    double log_scale;
};
WedgeResult propagate_wedge(const EvansSystem& sys, int k, double x0, double x1,
                            const Vec10c& omega0, cplx shift);

struct EvansValue {
    cplx value;        // normalized determinant (unit initial wedges)
    double log_scale;  // log of the renormalization factors absorbed
    cplx growth = 0.0; // exponent of the gauge factor removed by the shift
    double L;
    double X;
};

// Constant-layer Evans function D_-(lambda) = det(dual(E-)^* E0).
EvansValue evans_constant(const GasParams& gas, const ProfileSolution& profile,
                          cplx lambda);

// Shock Evans function: pairing at x = 0 of the unstable bundle from -L and
// the stable bundle from +L.
EvansValue evans_shock(const GasParams& gas, const ProfileSolution& profile,
                       cplx lambda, double L);

// Boundary-layer Evans function D_X: pairing at x = -X of E0 with the
// transported stable bundle from +L.
EvansValue evans_boundary(const GasParams& gas, const ProfileSolution& profile,
                          cplx lambda, double X, double L);

// beta(lambda, X) = exp(int_0^{-X} Tr G dz) * exp(Tr(Pi_{E-} G_-) X).
cplx beta_factor(const GasParams& gas, const ProfileSolution& profile, cplx lambda,
                 double X);

struct FactorizationRow {
    double X;
    cplx ratio;  // D_X / (beta * D_- * scriptD)
};
std::vector<FactorizationRow> factorization_check(const GasParams& gas,
                                                  const ProfileSolution& profile,
                                                  cplx lambda,
                                                  const std::vector<double>& X_list,
                                                  double L);

struct StabilityIndex {
    int index;         // +1 or -1; 0 when inconclusive
    int sign_changes;  // sign changes of D_X along the real grid
    double D_at_min;
    double D_at_max;
};
StabilityIndex stability_index(const GasParams& gas, const ProfileSolution& profile,
                               double X, double lambda_min, double lambda_max,
                               int n_grid);

// Winding number of a sampled closed curve of nonzero complex values; throws
// if the unwrapped phase is farther than 0.1 turns from an integer.
int winding_number(const std::vector<cplx>& values);

// Argument-principle zero count of D_X on a semicircular contour of radius R
// in {Re > axis_shift}, traversed with n_points samples.
int zero_count(const GasParams& gas, const ProfileSolution& profile, double X,
               double R, int n_points, double L, double axis_shift = 1e-3);

// Kato-style transported bases along a lambda polyline.
struct TransportedBases {
    Eigen::Matrix<cplx, 5, Eigen::Dynamic> E_plus_stable;
    Eigen::Matrix<cplx, 5, Eigen::Dynamic> E_minus_unstable;
    Eigen::Matrix<cplx, 5, Eigen::Dynamic> F_minus_stable;
};
TransportedBases limiting_bases(const GasParams& gas, const ProfileSolution& profile,
                                const std::vector<cplx>& lambda_path);

}  // namespace shockline

#endif
