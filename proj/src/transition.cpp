#include "shockline/transition.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>

namespace shockline {

namespace {

double delta_hat_at(const GasParams& gas, double u_plus) {
    const ShockData shock = endstates(gas, u_plus);
    return delta_hat(gas, shock).path_B;
}

double wall_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t0)
        .count();
}

// Evaluate f over the grid concurrently, then return results in grid order.
template <typename F>
auto concurrent_map(const std::vector<double>& grid, F f)
    -> std::vector<decltype(f(0.0))> {
    std::vector<std::future<decltype(f(0.0))>> futures;
    futures.reserve(grid.size());
    for (const double u : grid)
        futures.push_back(std::async(std::launch::async, f, u));
    std::vector<decltype(f(0.0))> out;
    out.reserve(grid.size());
    for (auto& fut : futures) out.push_back(fut.get());
    return out;
}

int evans_index_at(const GasParams& gas, const ShockData& shock, double X) {
    const AsymptoticData asym = linearization_minus(gas, shock);
    const double L = std::max(12.0 / asym.omega_minus, X + 6.0);
    const ProfileSolution prof = solve_profile(gas, shock, L, 1e-12);
    return stability_index(gas, prof, X, 1e-4, 4.0, 40).index;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 2) return {lo};
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * double(i) / (n - 1);
    return g;
}

std::vector<SweepRow> sweep_1d(const GasParams& gas, const std::vector<double>& u_grid,
                               int evans_stride) {
    std::vector<double> grid = u_grid;
    std::sort(grid.begin(), grid.end());
    auto eval = [&gas](double u) {
        SweepRow row;
        row.u_plus = u;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const ShockData shock = endstates(gas, u);
            row.e_minus = shock.e_minus;
            const Verdict1DResult v = onedim_verdict(gas, shock);
            row.delta = v.delta;
            row.delta_hat = v.delta_hat;
            row.verdict_1d = v.verdict;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        row.timing_ms = wall_ms(t0);
        return row;
    };
    std::vector<SweepRow> rows = concurrent_map(grid, eval);
    if (evans_stride > 0) {
        for (std::size_t i = 0; i < rows.size();
             i += static_cast<std::size_t>(evans_stride)) {
            if (!rows[i].error.empty()) continue;
            try {
                const ShockData shock = endstates(gas, rows[i].u_plus);
                const AsymptoticData asym = linearization_minus(gas, shock);
                rows[i].evans_index =
                    evans_index_at(gas, shock, 8.0 / asym.omega_minus);
            } catch (const std::exception& e) {
                rows[i].error = e.what();
            }
        }
    }
    return rows;
}

TransitionResult find_transition(const GasParams& gas, double lo, double hi,
                                 double tol) {
    if (!(lo < hi)) throw domain_error("find_transition: empty bracket");
    if (!(tol > 0.0)) throw domain_error("find_transition: tol must be positive");
    TransitionResult res;
    res.bracket_lo = lo;
    res.bracket_hi = hi;
    double flo = delta_hat_at(gas, lo);
    double fhi = delta_hat_at(gas, hi);
    res.sign_lo = flo > 0.0 ? 1.0 : (flo < 0.0 ? -1.0 : 0.0);
    res.sign_hi = fhi > 0.0 ? 1.0 : (fhi < 0.0 ? -1.0 : 0.0);
    if (res.sign_lo * res.sign_hi >= 0.0) {
        res.found = false;  // NoTransition: not an error verdict
        return res;
    }
    double a = lo, b = hi, fa = flo;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = delta_hat_at(gas, mid);
        if (std::abs(fm) < tol) {
            a = b = mid;
            break;
        }
        if (fa * fm < 0.0) {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
        if (b - a < 1e-15 * (1.0 + std::abs(a))) break;
    }
    res.found = true;
    res.u_star_transition = 0.5 * (a + b);
    res.residual = std::abs(delta_hat_at(gas, res.u_star_transition));
    return res;
}

std::vector<SweepRow> sweep_md(const GasParams& gas, const std::vector<double>& u_grid,
                               const CurveParams& params) {
    std::vector<double> grid = u_grid;
    std::sort(grid.begin(), grid.end());
    auto eval = [&gas, &params](double u) {
        SweepRow row;
        row.u_plus = u;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const ShockData shock = endstates(gas, u);
            row.e_minus = shock.e_minus;
            const Verdict1DResult v = onedim_verdict(gas, shock);
            row.delta = v.delta;
            row.delta_hat = v.delta_hat;
            row.verdict_1d = v.verdict;
            if (v.verdict != Verdict1D::Stable) {
                row.error = "skipped: 1D verdict is not Stable (multi-D curve test "
                            "precondition)";
            } else {
                const auto curve = trace_eta_curve(gas, shock, params.tau_max,
                                                   params.n_samples, params.refine_tol);
                row.eta_curve_verdict =
                    curve_axis_intersection(curve, params.refine_tol).verdict;
            }
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        row.timing_ms = wall_ms(t0);
        return row;
    };
    return concurrent_map(grid, eval);
}

CrossValidationReport cross_validate(const GasParams& gas,
                                     const std::vector<double>& u_samples,
                                     const std::vector<double>& X_samples,
                                     bool with_zero_count) {
    CrossValidationReport report;
    for (const double u : u_samples) {
        for (const double X : X_samples) {
            CrossValidationRow row;
            row.u_plus = u;
            row.X = X;
            try {
                const ShockData shock = endstates(gas, u);
                const Verdict1DResult v = onedim_verdict(gas, shock);
                if (v.verdict == Verdict1D::Marginal || std::abs(v.product) < 1e-8) {
                    row.excluded = true;
                    ++report.n_excluded;
                    report.rows.push_back(row);
                    continue;
                }
                row.sign_dd = v.product > 0.0 ? 1 : -1;
                const AsymptoticData asym = linearization_minus(gas, shock);
                const double L = std::max(12.0 / asym.omega_minus, X + 6.0);
                const ProfileSolution prof = solve_profile(gas, shock, L, 1e-12);
                row.evans_index = stability_index(gas, prof, X, 1e-4, 4.0, 40).index;
                row.match = row.evans_index == row.sign_dd;
                if (with_zero_count) {
                    const int zc = zero_count(gas, prof, X, 1.0, 48,
                                              X + 12.0 / asym.omega_minus);
                    row.zero_ct = zc;
                    row.parity_ok = (zc % 2) == (1 - row.evans_index) / 2;
                }
                if (row.match)
                    ++report.n_match;
                else
                    ++report.n_mismatch;
            } catch (const std::exception& e) {
                row.error = e.what();
                row.excluded = true;
                ++report.n_excluded;
            }
            report.rows.push_back(row);
        }
    }
    return report;
}

}  // namespace shockline
