#ifndef SHOCKLINE_LOPATINSKI_HPP
#define SHOCKLINE_LOPATINSKI_HPP

#include "shockline/gas.hpp"
#include "shockline/profile.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace shockline {

using cplx = std::complex<double>;
using Vec4c = Eigen::Vector4cd;
using Mat4c = Eigen::Matrix4cd;
using Mat43 = Eigen::Matrix<double, 4, 3>;
using Mat43c = Eigen::Matrix<std::complex<double>, 4, 3>;

struct FrequencyPoint {
    double xi = 0.0;      // transverse wavenumber
    cplx lambda{0.0, 0.0};// Re >= 0
    double eta = 0.0;     // extension parameter of the hatted determinant
};

// All algebraic determinant data at one shock/frequency.
struct LopatinskiBundle {
    Mat43 R_plus;        // unstable subspace basis of dF1(U_plus)
    Mat43c calR_plus;    // unstable subspace basis of calA_plus(xi, lambda)
    Vec4 ell_plus;       // stable left eigenvector of dF1(U_plus), 1D normalization
    Vec4 jump_U;
    Vec4 jump_F2;
    Vec4 A1S;            // dF1(U_minus) * S
    double delta = 0.0;      // det(R_plus | [U])
    double delta_hat = 0.0;  // det(R_plus | dF1(U_minus) S)
    double delta_B = 0.0;      // ell_plus . [U]
    double delta_hat_B = 0.0;  // ell_plus . dF1(U_minus) S
};

Vec4 jump_U(const ShockData& shock);
Vec4 jump_F2(const GasParams& gas, const ShockData& shock);

// Deterministic real orthonormal basis of the unstable subspace of dF1(U_plus)
// (the orthogonal complement of the stable left eigenvector).
Mat43 R_plus_basis(const GasParams& gas, const ShockData& shock);

// Stable left eigenvector of dF1(U_plus), computed by the primitive-variable
// route (left eigenvector (p_rho, -rho c, 0, p_e) of the convective matrix,
// transformed by the coordinate-change inverse); deterministic normalization.
Vec4 ell_plus_1d(const GasParams& gas, const ConservedState& U_plus);

double delta(const GasParams& gas, const ShockData& shock);

struct DeltaHat {
    double path_A;  // det(R_plus | dF1(U_minus) S)
    double path_B;  // ell_plus . dF1(U_minus) S
    double delta_A; // det(R_plus | [U]) (same basis as path_A)
    double delta_B; // ell_plus . [U]
};
DeltaHat delta_hat(const GasParams& gas, const ShockData& shock);

// calA_plus = (lambda I + i xi dF2(U_plus)) dF1(U_plus)^{-1}
Mat4c calA_plus(const GasParams& gas, const ConservedState& U_plus, double xi, cplx lambda);

// Basis of the unstable invariant subspace of calA_plus with deterministic
// ordering (descending real part) and phase (largest entry real positive).
// On Re lambda = 0 the continuous extension is taken via a small positive shift.
Mat43c calR_plus(const GasParams& gas, const ConservedState& U_plus, double xi, cplx lambda);

// Stable left eigenvector of calA_plus (primary path: eigen-decomposition).
Vec4c ell_plus_md(const GasParams& gas, const ConservedState& U_plus, double xi, cplx lambda);

// Closed-form candidate for ell_plus_md (audit only): first entry uses
// theta = theta_coeff * Gamma * e_plus, exposing the sign/coefficient ambiguity.
Vec4c ell_plus_md_closed_form(const GasParams& gas, const ConservedState& U_plus,
                              double xi, cplx lambda, double theta_coeff);

cplx Delta(const GasParams& gas, const ShockData& shock, double xi, cplx lambda);
cplx Delta_hat(const GasParams& gas, const ShockData& shock, double xi, cplx lambda,
               cplx eta);
cplx eta_hat(const GasParams& gas, const ShockData& shock, double xi, cplx lambda);

struct CurvePoint {
    double tau;
    cplx eta;
    bool pole = false;
};

std::vector<CurvePoint> trace_eta_curve(const GasParams& gas, const ShockData& shock,
                                        double tau_max, int n_samples,
                                        double refine_tol);

enum class CurveVerdict { Avoids, Intersects, Marginal };

struct IntersectionResult {
    CurveVerdict verdict;
    std::optional<double> tau_star;
};

IntersectionResult curve_axis_intersection(const std::vector<CurvePoint>& curve,
                                           double tol);

// Closed-form strong-shock limits as printed (reported verbatim; the numeric
// pipeline is authoritative where they disagree).
struct StrongShockLimits {
    double c_plus_lim;
    double e_plus_lim;
    Vec4 ell_plus_lim;
    Vec4 S_lim;          // both phi branches folded in
    Vec4 A1S_lim;
    double delta_hat_lim;
    std::optional<double> phi_crit;
    double kincrit_lhs;  // 16(Gamma+2)
    double kincrit_rhs;  // (2 Gamma + 1)(1 + 15 Gamma)
};

StrongShockLimits strong_shock_limits(const GasParams& gas);

enum class Verdict1D { Stable, Unstable, Marginal };

struct Verdict1DResult {
    Verdict1D verdict;
    double delta;
    double delta_hat;
    double product;
};

Verdict1DResult onedim_verdict(const GasParams& gas, const ShockData& shock,
                               double tol = 1e-12);

struct AuditEntry {
    std::string formula;
    std::string status;  // "Confirmed" or "Discrepant"
    double residual;
    std::string detail;
};

struct AuditReport {
    std::vector<AuditEntry> entries;
    const AuditEntry* find(const std::string& formula) const;
};

AuditReport audit_report(const GasParams& gas);

}  // namespace shockline

#endif
