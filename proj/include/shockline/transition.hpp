#ifndef SHOCKLINE_TRANSITION_HPP
#define SHOCKLINE_TRANSITION_HPP

#include "shockline/evans.hpp"
#include "shockline/lopatinski.hpp"

#include <optional>
#include <string>
#include <vector>

namespace shockline {

// One point of a shock-strength sweep.  Per-point failures are recorded
// in-row ('error' nonempty) and the sweep continues.
struct SweepRow {
    double u_plus = 0.0;
    double e_minus = 0.0;
    double delta = 0.0;      // ell_plus . [U]
    double delta_hat = 0.0;  // ell_plus . dF1(U_minus) S
    Verdict1D verdict_1d = Verdict1D::Marginal;
    std::optional<CurveVerdict> eta_curve_verdict;
    std::optional<int> evans_index;
    double timing_ms = 0.0;
    std::string error;  // empty on success; reason when skipped/failed
};

struct TransitionResult {
    bool found = false;          // false => NoTransition
    double u_star_transition = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double residual = 0.0;       // |delta_hat| re-evaluated at the root
    double sign_lo = 0.0;        // side signs of delta_hat at the bracket ends
    double sign_hi = 0.0;
};

struct CurveParams {
    double tau_max = 50.0;
    int n_samples = 400;
    double refine_tol = 1e-6;
};

// Per-point delta/delta_hat/verdict over a u_plus grid; rows sorted by
// u_plus.  evans_stride > 0 additionally computes the Evans stability index
// on every evans_stride-th point (X = 8/omega_-).
std::vector<SweepRow> sweep_1d(const GasParams& gas, const std::vector<double>& u_grid,
                               int evans_stride = 0);

// Bisection for a sign change of delta_hat(u_plus) on [lo, hi].  Returns
// found = false when the endpoint signs agree (NoTransition).
TransitionResult find_transition(const GasParams& gas, double lo, double hi,
                                 double tol);

// Multi-D sweep: eta-hat curve verdict per point; points failing the 1D
// stability precondition are skipped with a reason.
std::vector<SweepRow> sweep_md(const GasParams& gas, const std::vector<double>& u_grid,
                               const CurveParams& params);

struct CrossValidationRow {
    double u_plus = 0.0;
    double X = 0.0;
    int evans_index = 0;
    int sign_dd = 0;  // sgn(delta * delta_hat)
    bool match = false;
    bool excluded = false;  // Marginal rows are excluded from the statistic
    std::optional<int> zero_ct;
    std::optional<bool> parity_ok;  // zero_count mod 2 == (1 - index)/2
    std::string error;
};

struct CrossValidationReport {
    std::vector<CrossValidationRow> rows;
    int n_match = 0;
    int n_mismatch = 0;
    int n_excluded = 0;
};

// Independent consistency check of the Evans stability index against the
// algebraic sign product, plus the argument-principle parity check.
CrossValidationReport cross_validate(const GasParams& gas,
                                     const std::vector<double>& u_samples,
                                     const std::vector<double>& X_samples,
                                     bool with_zero_count = true);

// Evenly spaced grid helper (n points, endpoints included).
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace shockline

#endif
