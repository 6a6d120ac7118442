#include "shockline/profile.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace shockline {

namespace {

// 4x2 map d(conserved)/d(u,e) along the orbit (m = 1, v = 0, rho = 1/u).
Eigen::Matrix<double, 4, 2> cons_tangent_map(double u, double e) {
    Eigen::Matrix<double, 4, 2> T = Eigen::Matrix<double, 4, 2>::Zero();
    T(0, 0) = -1.0 / (u * u);
    T(3, 0) = -e / (u * u) + 0.5;
    T(3, 1) = 1.0 / u;
    return T;
}

ConservedState make_state(double u, double e) {
    return primitive_to_conserved(PrimitiveState{1.0 / u, u, 0.0, e});
}

}  // namespace

ShockData endstates(const GasParams& gas, double u_plus) {
    const double G = gas.Gamma;
    const double u_star = G / (G + 2.0);
    if (!(u_plus > u_star && u_plus <= 1.0))
        throw domain_error("endstates: u_plus must lie in (u_star, 1], u_star = " +
                           std::to_string(u_star));
    ShockData sd;
    sd.u_plus = u_plus;
    sd.u_star = u_star;
    // alpha = (Gamma+2-Gamma*u_plus)/(u_plus-u_star); limit Gamma+2 at u_plus = 1.
    sd.alpha = (u_plus < 1.0)
                   ? (G + 2.0 - G * u_plus) / (u_plus - u_star)
                   : G + 2.0;
    // Regularized endstate formulas (exact algebraic simplifications of the
    // alpha-based expressions, removing the 0/0 at u_plus = 1):
    //   e_minus = (Gamma+2)(u_plus-u_star) / (2 Gamma (Gamma+1))
    //   e_plus  = u_plus (Gamma+2-Gamma u_plus) / (2 Gamma (Gamma+1))
    sd.e_minus = (G + 2.0) * (u_plus - u_star) / (2.0 * G * (G + 1.0));
    sd.e_plus = u_plus * (G + 2.0 - G * u_plus) / (2.0 * G * (G + 1.0));
    sd.rho_plus = 1.0 / u_plus;
    sd.U_minus = make_state(1.0, sd.e_minus);
    sd.U_plus = make_state(u_plus, sd.e_plus);

    const Vec4 rh = flux_x(gas, sd.U_plus) - flux_x(gas, sd.U_minus);
    if (rh.cwiseAbs().maxCoeff() > 1e-10)
        throw numerical_error("endstates: Rankine-Hugoniot residual " +
                              std::to_string(rh.cwiseAbs().maxCoeff()) +
                              " exceeds 1e-10 (formula transcription bug)");
    return sd;
}

Vec2 profile_rhs(const GasParams& gas, const ShockData& shock, const Vec2& ue) {
    const double u = ue[0], e = ue[1];
    if (!(u > 0.0)) throw domain_error("profile_rhs: nonpositive velocity (vacuum)");
    const double b = 2.0 * gas.mu + gas.eta2;
    const double G = gas.Gamma;
    const double em = shock.e_minus;
    Vec2 d;
    d[0] = ((u - 1.0) + G * (e / u - em)) / b;
    d[1] = ((e - em) - 0.5 * (u - 1.0) * (u - 1.0) + (u - 1.0) * G * em) / gas.nu;
    return d;
}

namespace {

Mat2 profile_jacobian(const GasParams& gas, const ShockData& shock, const Vec2& ue) {
    const double u = ue[0], e = ue[1];
    const double b = 2.0 * gas.mu + gas.eta2;
    const double G = gas.Gamma;
    Mat2 J;
    J(0, 0) = (1.0 - G * e / (u * u)) / b;
    J(0, 1) = G / (b * u);
    J(1, 0) = (-(u - 1.0) + G * shock.e_minus) / gas.nu;
    J(1, 1) = 1.0 / gas.nu;
    return J;
}

}  // namespace

Vec2 ProfileSolution::value_at(double x) const {
    if (grid.empty()) throw numerical_error("ProfileSolution: empty grid");
    if (x <= grid.front()) return Vec2(1.0, shock.e_minus);
    if (x >= grid.back()) return Vec2(shock.u_plus, shock.e_plus);
    const auto it = std::upper_bound(grid.begin(), grid.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - grid.begin()) - 1;
    const double h = grid[i + 1] - grid[i];
    const double t = (x - grid[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * values[i] + (t3 - 2 * t2 + t) * h * derivs[i] +
           (-2 * t3 + 3 * t2) * values[i + 1] + (t3 - t2) * h * derivs[i + 1];
}

Vec2 ProfileSolution::derivative_at(double x) const {
    if (grid.empty()) throw numerical_error("ProfileSolution: empty grid");
    if (x <= grid.front() || x >= grid.back()) return Vec2::Zero();
    const auto it = std::upper_bound(grid.begin(), grid.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - grid.begin()) - 1;
    const double h = grid[i + 1] - grid[i];
    const double t = (x - grid[i]) / h;
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * values[i] + (3 * t2 - 4 * t + 1) * h * derivs[i] +
            (-6 * t2 + 6 * t) * values[i + 1] + (3 * t2 - 2 * t) * h * derivs[i + 1]) /
           h;
}

ProfileSolution solve_profile(const GasParams& gas, const ShockData& shock,
                              double L, double tol) {
    if (!(L > 0.0)) throw domain_error("solve_profile: L must be positive");
    if (!(shock.u_plus < 1.0))
        throw domain_error("solve_profile: profile requires a strictly interior shock "
                           "(u_plus < 1)");

    const Vec2 Uin(1.0, shock.e_minus);
    const Vec2 Uout(shock.u_plus, shock.e_plus);
    const double amp = (Uout - Uin).norm();

    // Saddle seed: step off U_plus along the stable eigenvector, toward U_minus.
    const Mat2 Jp = profile_jacobian(gas, shock, Uout);
    const Eigen::EigenSolver<Mat2> es(Jp);
    int istab = std::real(es.eigenvalues()[0]) < std::real(es.eigenvalues()[1]) ? 0 : 1;
    const double mu_s = std::real(es.eigenvalues()[istab]);
    if (!(mu_s < 0.0))
        throw numerical_error("solve_profile: U_plus is not a saddle (no stable direction)");
    Vec2 ws = es.eigenvectors().col(istab).real().normalized();
    if (ws[0] * (1.0 - shock.u_plus) < 0.0) ws = -ws;
    const double eps = 1e-7;
    const Vec2 seed = Uout + eps * amp * ws;

    // Integrate backward (decreasing x) until within stop_tol of U_minus.
    const double stop_tol = std::min(tol, 1e-12);
    using state_t = std::array<double, 2>;
    namespace ode = boost::numeric::odeint;
    auto rhs_back = [&](const state_t& y, state_t& dydt, double) {
        const Vec2 d = profile_rhs(gas, shock, Vec2(y[0], y[1]));
        dydt[0] = -d[0];
        dydt[1] = -d[1];
    };
    auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<state_t>>(1e-14, 3e-13);

    std::vector<double> ts;
    std::vector<Vec2> ys;
    state_t y{seed[0], seed[1]};
    double t = 0.0, dt = 1e-3;
    ts.push_back(t);
    ys.push_back(seed);
    const double t_max = 400.0 * (1.0 + 1.0 / gas.nu) + 4000.0;
    const double margin = 0.2 * (1.0 - shock.u_plus) + 0.05;
    std::size_t steps = 0;
    while ((Vec2(y[0], y[1]) - Uin).norm() > stop_tol) {
        ode::controlled_step_result res;
        do {
            res = stepper.try_step(rhs_back, y, t, dt);
        } while (res == ode::fail);
        ts.push_back(t);
        ys.push_back(Vec2(y[0], y[1]));
        if (y[0] > 1.0 + margin || y[0] < shock.u_plus - margin)
            throw numerical_error("solve_profile: orbit exited the physical region "
                                  "(connection failure)");
        if (t > t_max || ++steps > 2000000)
            throw numerical_error("solve_profile: tolerance not reached; closest approach " +
                                  std::to_string((Vec2(y[0], y[1]) - Uin).norm()));
    }

    // Backward time t maps to x = x_seed - t; reverse to obtain increasing x.
    ProfileSolution prof;
    prof.gas = gas;
    prof.shock = shock;
    const std::size_t N = ts.size();
    prof.grid.resize(N);
    prof.values.resize(N);
    prof.derivs.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        const std::size_t j = N - 1 - i;
        prof.grid[i] = -ts[j];
        prof.values[i] = ys[j];
        prof.derivs[i] = profile_rhs(gas, shock, ys[j]);
    }

    // Exponential right-tail extension past the seed toward U_plus.
    {
        const Vec2 dev = seed - Uout;
        double x = 0.0;
        const double x_end = std::log(stop_tol / (eps * amp)) / mu_s;  // > 0
        const double h = std::max(0.25, x_end / 256.0);
        while (x < x_end) {
            x += h;
            const Vec2 v = Uout + std::exp(mu_s * x) * dev;
            prof.grid.push_back(x);
            prof.values.push_back(v);
            prof.derivs.push_back(profile_rhs(gas, shock, v));
        }
    }

    // Anchor u_hat = (1+u_plus)/2 at x = 0 by bisection on the interpolant.
    const double u_anchor = 0.5 * (1.0 + shock.u_plus);
    double lo = prof.grid.front(), hi = prof.grid.back();
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        // u_hat decreases in x.
        if (prof.value_at(mid)[0] > u_anchor)
            lo = mid;
        else
            hi = mid;
    }
    const double shift = 0.5 * (lo + hi);
    for (auto& x : prof.grid) x -= shift;
    prof.L = std::max({L, -prof.grid.front(), prof.grid.back()});
    prof.anchor = static_cast<std::size_t>(
        std::lower_bound(prof.grid.begin(), prof.grid.end(), 0.0) - prof.grid.begin());

    const TailFit tf = profile_tail_direction(prof);
    prof.tail_rate = tf.rate;
    prof.tail_direction = tf.direction;
    return prof;
}

AsymptoticData linearization_minus(const GasParams& gas, const ShockData& shock) {
    const double b = 2.0 * gas.mu + gas.eta2;
    const double G = gas.Gamma;
    const double em = shock.e_minus;
    AsymptoticData a;
    a.M_minus << (1.0 - G * em) / b, G / b, G * em / gas.nu, 1.0 / gas.nu;

    const double inv_nu = 1.0 / gas.nu;
    const double d = (1.0 - G * em) / b - inv_nu;
    const double disc = std::sqrt(d * d + 4.0 * G * G * em / (b * gas.nu));
    a.omega_minus = inv_nu + 0.5 * (d - disc);
    a.omega_plus = inv_nu + 0.5 * (d + disc);

    const double merge_tol = 1e-9;
    auto eigvec = [&](double omega) -> Vec2 {
        if (std::abs(omega - inv_nu) > merge_tol)
            return Vec2(-1.0, -G * em / (gas.nu * (omega - inv_nu)));
        // Degenerate/merging case: fall back to direct eigen-decomposition.
        const Eigen::EigenSolver<Mat2> es(a.M_minus);
        const int i =
            std::abs(std::real(es.eigenvalues()[0]) - omega) <
                    std::abs(std::real(es.eigenvalues()[1]) - omega)
                ? 0
                : 1;
        Vec2 v = es.eigenvectors().col(i).real();
        if (v[0] > 0.0) v = -v;  // match the (-1, *) convention
        return v / std::abs(v[0]);
    };
    a.s_minus = eigvec(a.omega_minus);
    a.s_plus = eigvec(a.omega_plus);
    return a;
}

AsymptoticData asymptotic_direction(const GasParams& gas, const ShockData& shock,
                                    bool strong_shock_limit) {
    AsymptoticData a = linearization_minus(gas, shock);
    const double G = gas.Gamma;
    if (strong_shock_limit) {
        // e_minus -> 0 limit of the slow eigenvector: (-1, (1-phi)/Gamma) for
        // phi <= 1 (slow eigenvalue 1/nu), (-1, 0) for phi >= 1 (slow 1/(2mu+eta2)).
        a.s = (gas.phi <= 1.0) ? Vec2(-1.0, (1.0 - gas.phi) / G).normalized()
                               : Vec2(-1.0, 0.0);
    } else {
        if (std::abs(a.omega_plus - a.omega_minus) < 1e-9)
            throw domain_error("asymptotic_direction: omega_- = omega_+ within tolerance; "
                               "use the strong-shock limiting formula");
        a.s = a.s_minus.normalized();
    }
    Eigen::Matrix<double, 4, 2> T = Eigen::Matrix<double, 4, 2>::Zero();
    T(0, 0) = -1.0;
    T(3, 0) = 0.5 - shock.e_minus;
    T(3, 1) = 1.0;
    if (strong_shock_limit) T(3, 0) = 0.5;
    Vec4 S = T * a.s;
    if (S[0] < 0.0) S = -S;
    a.S = S / S[0];  // first conserved component normalized to +1
    return a;
}

TailFit fit_tail(const std::vector<double>& xs, const std::vector<Vec4>& dUs) {
    if (xs.size() < 4)
        throw numerical_error("fit_tail: insufficient tail samples; increase L");
    // Direction: dominant right singular direction of the normalized samples
    // with consistent sign.
    Eigen::MatrixXd A(static_cast<Eigen::Index>(xs.size()), 4);
    Vec4 ref = dUs.back().normalized();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Vec4 d = dUs[i].normalized();
        if (d.dot(ref) < 0.0) d = -d;
        A.row(static_cast<Eigen::Index>(i)) = d.transpose();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinV);
    Vec4 dir = svd.matrixV().col(0);
    if (dir.dot(ref) < 0.0) dir = -dir;
    // Rate: least-squares slope of log|U'| against x.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lx = xs[i], ly = std::log(dUs[i].norm());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(xs.size());
    TailFit tf;
    tf.direction = dir;
    tf.rate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return tf;
}

TailFit profile_tail_direction(const ProfileSolution& profile) {
    const Vec2 Uin(1.0, profile.shock.e_minus);
    const double A0 =
        (Vec2(profile.shock.u_plus, profile.shock.e_plus) - Uin).norm();
    std::vector<double> xs;
    std::vector<Vec4> dUs;
    for (std::size_t i = 0; i < profile.grid.size(); ++i) {
        const double dev = (profile.values[i] - Uin).norm();
        if (dev > 1e-5 * A0) break;
        if (dev < 1e-9 * A0) continue;
        const Vec2 ue = profile.values[i];
        xs.push_back(profile.grid[i]);
        dUs.push_back(cons_tangent_map(ue[0], ue[1]) * profile.derivs[i]);
    }
    if (xs.size() < 8 || dUs.front().norm() / dUs.back().norm() > 1e-2)
        throw numerical_error("profile_tail_direction: tail not resolved over two "
                              "decades; increase L");
    return fit_tail(xs, dUs);
}

Eigen::Vector3d profile_U3(const ProfileSolution& profile, double x) {
    const Vec2 ue = profile.value_at(x);
    const double u = ue[0], e = ue[1];
    return Eigen::Vector3d(1.0 / u, 1.0, e / u + 0.5 * u);
}

Eigen::Vector3d profile_U3_deriv(const ProfileSolution& profile, double x) {
    const Vec2 ue = profile.value_at(x);
    const Vec2 d = profile.derivative_at(x);
    const double u = ue[0], e = ue[1];
    return Eigen::Vector3d(-d[0] / (u * u), 0.0,
                           d[1] / u - e * d[0] / (u * u) + 0.5 * d[0]);
}

}  // namespace shockline
