#include "shockline/evans.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace shockline {

namespace {

// Index tables for the exterior powers of C^5.
constexpr int kC52[10][2] = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2},
                             {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
constexpr int kC53[10][3] = {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 4},
                             {0, 3, 4}, {1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}};

int find_index2(int a, int b) {
    for (int i = 0; i < 10; ++i)
        if (kC52[i][0] == a && kC52[i][1] == b) return i;
    return -1;
}

int find_index3(int a, int b, int c) {
    for (int i = 0; i < 10; ++i)
        if (kC53[i][0] == a && kC53[i][1] == b && kC53[i][2] == c) return i;
    return -1;
}

// Sign of the permutation sorting a small index list (counting inversions).
template <std::size_t N>
double sort_sign(std::array<int, N>& v) {
    int inv = 0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j)
            if (v[i] > v[j]) {
                std::swap(v[i], v[j]);
                ++inv;
            }
    return (inv % 2 == 0) ? 1.0 : -1.0;
}

// dB/dU tensor T[i][j][k] = d B_ij / d U_k for the reduced 3x3 system.
using Tensor333 = std::array<std::array<std::array<double, 3>, 3>, 3>;

Tensor333 viscous_B_derivative(const GasParams& gas, const Vec3& U) {
    const double rho = U[0], m = U[1], EE = U[2];
    const double b = 2.0 * gas.mu + gas.eta2;
    const double nu = gas.nu;
    const double r2 = rho * rho, r3 = r2 * rho, r4 = r3 * rho;
    Tensor333 T{};
    T[1][0] = {2 * b * m / r3, -b / r2, 0};
    T[1][1] = {-b / r2, 0, 0};
    T[2][0] = {-3 * (nu - b) * m * m / r4 + 2 * nu * EE / r3,
               2 * (nu - b) * m / r3, -nu / r2};
    T[2][1] = {-2 * (b - nu) * m / r3, (b - nu) / r2, 0};
    T[2][2] = {-nu / r2, 0, 0};
    return T;
}

}  // namespace

Mat3 viscous_B(const GasParams& gas, const Vec3& U) {
    const double rho = U[0], u = U[1] / U[0], E = U[2] / U[0];
    const double b = 2.0 * gas.mu + gas.eta2;
    const double nu = gas.nu;
    Mat3 B;
    B << 0, 0, 0,
        -b * u / rho, b / rho, 0,
        ((nu - b) * u * u - nu * E) / rho, (b - nu) * u / rho, nu / rho;
    return B;
}

Mat3 jacobian_F1_3(const GasParams& gas, const Vec3& U) {
    const double rho = U[0], m = U[1], EE = U[2];
    const double G = gas.Gamma;
    const double u = m / rho;
    const double p = G * (EE - m * m / (2 * rho));
    const double H = (EE + p) / rho;
    Mat3 A;
    A << 0, 1, 0,
        -u * u + G * u * u / 2, (2 - G) * u, G,
        u * (G * u * u / 2 - H), H - G * u * u, (1 + G) * u;
    return A;
}

namespace {

Mat5c assemble_G(const GasParams& gas, cplx lambda, const Vec3& U, const Vec3& Up) {
    const Mat3 B = viscous_B(gas, U);
    const Mat3 A = jacobian_F1_3(gas, U);
    const Tensor333 T = viscous_B_derivative(gas, U);
    Mat3 D = Mat3::Zero();   // D_ij = sum_k dB_ik/dU_j Up_k
    Mat3 Bx = Mat3::Zero();  // (d/dx B)_ij = sum_k dB_ij/dU_k Up_k
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                D(i, j) += T[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]
                            [static_cast<std::size_t>(j)] *
                           Up[k];
                Bx(i, j) += T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                             [static_cast<std::size_t>(k)] *
                            Up[k];
            }
    const Mat3 A1 = A - D;
    Mat3 K;
    K.row(0) = -A1.row(0);
    K.row(1) = B.row(1);
    K.row(2) = B.row(2);
    if (std::abs(K.determinant()) < 1e-12)
        throw numerical_error("build_system: block solvability (full-rank) condition "
                              "violated");
    const Mat3 P = K.inverse();
    // U = P (Z2, Z1_a, Z1_b); express as 3x5 map on (Z1_a, Z1_b, Z2, Z3_a, Z3_b).
    Eigen::Matrix<double, 3, 5> M_U = Eigen::Matrix<double, 3, 5>::Zero();
    M_U.col(2) = P.col(0);
    M_U.col(0) = P.col(1);
    M_U.col(1) = P.col(2);
    const Eigen::Matrix<double, 2, 3> C = A1.bottomRows<2>() + Bx.bottomRows<2>();
    Mat5c G = Mat5c::Zero();
    G(0, 3) = 1.0;
    G(1, 4) = 1.0;
    G.topRows<2>() += (C * M_U).cast<cplx>();
    G.row(2) = lambda * M_U.row(0).cast<cplx>();
    G.bottomRows<2>() = lambda * M_U.bottomRows<2>().cast<cplx>();
    return G;
}

Vec3 endstate_U3(const ShockData& shock, bool plus) {
    if (plus) {
        const double u = shock.u_plus;
        return Vec3(1.0 / u, 1.0, shock.e_plus / u + 0.5 * u);
    }
    return Vec3(1.0, 1.0, shock.e_minus + 0.5);
}

}  // namespace

Mat5c EvansSystem::G_at(double x) const {
    return assemble_G(gas, lambda, profile_U3(*profile, x), profile_U3_deriv(*profile, x));
}

Mat5c EvansSystem::G_minus() const {
    return assemble_G(gas, lambda, endstate_U3(profile->shock, false), Vec3::Zero());
}

Mat5c EvansSystem::G_plus() const {
    return assemble_G(gas, lambda, endstate_U3(profile->shock, true), Vec3::Zero());
}

EvansSystem build_system(const GasParams& gas, const ProfileSolution& profile,
                         cplx lambda) {
    return EvansSystem{gas, &profile, lambda};
}

Eigen::Matrix<cplx, 5, Eigen::Dynamic> boundary_kernel(BoundaryType type) {
    if (type == BoundaryType::DirichletInflow) {
        Eigen::Matrix<cplx, 5, Eigen::Dynamic> E(5, 2);
        E.setZero();
        E(3, 0) = 1.0;  // {Z1 = 0, Z2 = 0}: span of the Z3 directions
        E(4, 1) = 1.0;
        return E;
    }
    Eigen::Matrix<cplx, 5, Eigen::Dynamic> E(5, 3);
    E.setZero();
    E(2, 0) = 1.0;  // {Z1 = 0}: span of Z2 and Z3 directions
    E(3, 1) = 1.0;
    E(4, 2) = 1.0;
    return E;
}

Subspace invariant_subspace(const Mat5c& G, bool stable, int k) {
    const Eigen::ComplexEigenSolver<Mat5c> es(G);
    std::array<int, 5> idx{0, 1, 2, 3, 4};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        const cplx wa = es.eigenvalues()[a], wb = es.eigenvalues()[b];
        if (std::real(wa) != std::real(wb)) return std::real(wa) < std::real(wb);
        return std::imag(wa) < std::imag(wb);
    });
    Subspace sub;
    sub.columns.resize(5, k);
    sub.eigenvalue_sum = 0.0;
    for (int j = 0; j < k; ++j) {
        const int e = stable ? idx[static_cast<std::size_t>(j)]
                             : idx[static_cast<std::size_t>(5 - k + j)];
        if (stable && std::real(es.eigenvalues()[e]) >= 0.0)
            throw numerical_error("invariant_subspace: requested stable dimension not "
                                  "available (consistent-splitting violation)");
        if (!stable && std::real(es.eigenvalues()[e]) <= 0.0)
            throw numerical_error("invariant_subspace: requested unstable dimension not "
                                  "available (consistent-splitting violation)");
        Vec5c v = es.eigenvectors().col(e);
        v.normalize();
        Eigen::Index imax;
        v.cwiseAbs().maxCoeff(&imax);
        v *= std::conj(v[imax]) / std::abs(v[imax]);
        sub.columns.col(j) = v;
        sub.eigenvalue_sum += es.eigenvalues()[e];
    }
    return sub;
}

Mat10c exterior_lift(const Mat5c& G, int k) {
    Mat10c L = Mat10c::Zero();
    auto act = [&](const int* I, int col) {
        for (int p = 0; p < k; ++p) {
            for (int j = 0; j < 5; ++j) {
                const cplx g = G(j, I[p]);
                if (g == 0.0) continue;
                if (j == I[p]) {
                    L(col, col) += g;
                    continue;
                }
                bool dup = false;
                for (int q = 0; q < k; ++q)
                    if (q != p && I[q] == j) dup = true;
                if (dup) continue;
                if (k == 2) {
                    std::array<int, 2> J{I[0], I[1]};
                    J[static_cast<std::size_t>(p)] = j;
                    const double s = sort_sign(J);
                    L(find_index2(J[0], J[1]), col) += s * g;
                } else {
                    std::array<int, 3> J{I[0], I[1], I[2]};
                    J[static_cast<std::size_t>(p)] = j;
                    const double s = sort_sign(J);
                    L(find_index3(J[0], J[1], J[2]), col) += s * g;
                }
            }
        }
    };
    for (int c = 0; c < 10; ++c) act(k == 2 ? kC52[c] : kC53[c], c);
    return L;
}

Vec10c wedge(const Eigen::Matrix<cplx, 5, Eigen::Dynamic>& V) {
    const int k = static_cast<int>(V.cols());
    Vec10c w;
    for (int i = 0; i < 10; ++i) {
        Eigen::MatrixXcd sub(k, k);
        const int* I = k == 2 ? kC52[i] : kC53[i];
        for (int r = 0; r < k; ++r) sub.row(r) = V.row(I[r]);
        w[i] = sub.determinant();
    }
    return w;
}

cplx wedge_pair(const Vec10c& omega2, const Vec10c& omega3) {
    cplx total = 0.0;
    for (int i = 0; i < 10; ++i) {
        const int a = kC52[i][0], b = kC52[i][1];
        std::array<int, 3> comp{};
        int n = 0;
        for (int j = 0; j < 5; ++j)
            if (j != a && j != b) comp[static_cast<std::size_t>(n++)] = j;
        std::array<int, 5> perm{a, b, comp[0], comp[1], comp[2]};
        const double s = sort_sign(perm);
        total += s * omega2[i] * omega3[find_index3(comp[0], comp[1], comp[2])];
    }
    return total;
}

WedgeResult propagate_wedge(const EvansSystem& sys, int k, double x0, double x1,
                            const Vec10c& omega0, cplx shift) {
    namespace ode = boost::numeric::odeint;
    using state_t = std::array<double, 20>;
    auto rhs = [&](const state_t& y, state_t& dy, double x) {
        Vec10c w;
        for (int i = 0; i < 10; ++i) w[i] = cplx(y[static_cast<std::size_t>(i)],
                                                 y[static_cast<std::size_t>(i + 10)]);
        const Mat10c Lk = exterior_lift(sys.G_at(x), k) - shift * Mat10c::Identity();
        const Vec10c dw = Lk * w;
        for (int i = 0; i < 10; ++i) {
            dy[static_cast<std::size_t>(i)] = std::real(dw[i]);
            dy[static_cast<std::size_t>(i + 10)] = std::imag(dw[i]);
        }
    };
    WedgeResult res;
    res.omega = omega0;
    res.log_scale = 0.0;
    const double dir = x1 > x0 ? 1.0 : -1.0;
    double x = x0;
    auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<state_t>>(1e-12, 1e-11);
    while (dir * (x1 - x) > 1e-12) {
        const double x_next = x + dir * std::min(2.0, dir * (x1 - x));
        state_t y;
        for (int i = 0; i < 10; ++i) {
            y[static_cast<std::size_t>(i)] = std::real(res.omega[i]);
            y[static_cast<std::size_t>(i + 10)] = std::imag(res.omega[i]);
        }
        double t = x, dt = dir * 1e-3;
        while (dir * (x_next - t) > 1e-12) {
            if (dir * dt > dir * (x_next - t)) dt = x_next - t;
            ode::controlled_step_result r;
            do {
                r = stepper.try_step(rhs, y, t, dt);
            } while (r == ode::fail);
        }
        for (int i = 0; i < 10; ++i)
            res.omega[i] = cplx(y[static_cast<std::size_t>(i)],
                                y[static_cast<std::size_t>(i + 10)]);
        const double nrm = res.omega.norm();
        if (!(nrm > 1e-290) || !std::isfinite(nrm))
            throw numerical_error("propagate_wedge: exterior-vector underflow/overflow "
                                  "beyond renormalization");
        res.omega /= nrm;
        res.log_scale += std::log(nrm);
        x = x_next;
    }
    return res;
}

namespace {

// For real lambda the wedge of an eigen-subspace closed under conjugation can
// be rotated to a real vector; rotate the global phase and drop the residual
// imaginary part if it is negligible.
Vec10c realify_wedge(Vec10c w) {
    Eigen::Index imax;
    w.cwiseAbs().maxCoeff(&imax);
    w *= std::conj(w[imax]) / std::abs(w[imax]);
    if (w.imag().norm() < 1e-9 * w.norm())
        for (int i = 0; i < 10; ++i) w[i] = cplx(std::real(w[i]), 0.0);
    return w;
}

Vec10c init_wedge(const Subspace& sub, bool lambda_real) {
    Vec10c w = wedge(sub.columns);
    w.normalize();
    if (lambda_real) w = realify_wedge(w);
    return w;
}

// Real-basis version of an invariant subspace (real lambda): conjugate pairs
// are replaced by real/imaginary parts.
Eigen::MatrixXcd realify_basis(const Mat5c& G, bool stable, int k) {
    const Subspace sub = invariant_subspace(G, stable, k);
    Eigen::MatrixXcd V = sub.columns;
    for (int j = 0; j < k; ++j) {
        if (V.col(j).imag().norm() < 1e-10 * V.col(j).norm()) {
            V.col(j) = V.col(j).real().cast<cplx>();
        } else if (j + 1 < k) {
            const Eigen::VectorXcd v = V.col(j);
            V.col(j) = v.real().normalized().cast<cplx>();
            V.col(j + 1) = v.imag().normalized().cast<cplx>();
            ++j;
        }
    }
    return V;
}

}  // namespace

EvansValue evans_constant(const GasParams& gas, const ProfileSolution& profile,
                          cplx lambda) {
    if (!(std::real(lambda) >= 0.0) || lambda == 0.0)
        throw domain_error("evans_constant: require Re(lambda) >= 0, lambda != 0");
    const EvansSystem sys = build_system(gas, profile, lambda);
    const Mat5c Gm = sys.G_minus();
    const bool real_lam = std::imag(lambda) == 0.0;
    Eigen::MatrixXcd Em, Fm;
    if (real_lam) {
        Em = realify_basis(Gm, false, 2);
        Fm = realify_basis(Gm, true, 3);
    } else {
        Em = invariant_subspace(Gm, false, 2).columns;
        Fm = invariant_subspace(Gm, true, 3).columns;
    }
    Mat5c T;
    T << Em, Fm;
    const Mat5c Tinv = T.inverse();
    const auto E0 = boundary_kernel(BoundaryType::DirichletInflow);
    const Eigen::Matrix2cd Dm = Tinv.topRows<2>() * E0;
    EvansValue v;
    v.value = Dm.determinant();
    v.log_scale = 0.0;
    v.L = 0.0;
    v.X = 0.0;
    return v;
}

EvansValue evans_shock(const GasParams& gas, const ProfileSolution& profile,
                       cplx lambda, double L) {
    const EvansSystem sys = build_system(gas, profile, lambda);
    const bool real_lam = std::imag(lambda) == 0.0;
    const Subspace Em = invariant_subspace(sys.G_minus(), false, 2);
    const Subspace Ep = invariant_subspace(sys.G_plus(), true, 3);
    const Vec10c w2 = init_wedge(Em, real_lam);
    const Vec10c w3 = init_wedge(Ep, real_lam);
    const WedgeResult r2 = propagate_wedge(sys, 2, -L, 0.0, w2, Em.eigenvalue_sum);
    const WedgeResult r3 = propagate_wedge(sys, 3, L, 0.0, w3, Ep.eigenvalue_sum);
    EvansValue v;
    v.value = wedge_pair(r2.omega, r3.omega);
    v.log_scale = r2.log_scale + r3.log_scale;
    v.growth = Em.eigenvalue_sum * L - Ep.eigenvalue_sum * L;
    v.L = L;
    v.X = 0.0;
    return v;
}

EvansValue evans_boundary(const GasParams& gas, const ProfileSolution& profile,
                          cplx lambda, double X, double L) {
    if (!(X >= 0.0 && X < L))
        throw domain_error("evans_boundary: require 0 <= X < L");
    const EvansSystem sys = build_system(gas, profile, lambda);
    const bool real_lam = std::imag(lambda) == 0.0;
    const Subspace Ep = invariant_subspace(sys.G_plus(), true, 3);
    const Vec10c w3 = init_wedge(Ep, real_lam);
    const WedgeResult r3 = propagate_wedge(sys, 3, L, -X, w3, Ep.eigenvalue_sum);
    const Vec10c w0 = wedge(boundary_kernel(BoundaryType::DirichletInflow));
    EvansValue v;
    v.value = wedge_pair(w0, r3.omega);
    v.log_scale = r3.log_scale;
    v.growth = Ep.eigenvalue_sum * (-X - L);
    v.L = L;
    v.X = X;
    return v;
}

cplx beta_factor(const GasParams& gas, const ProfileSolution& profile, cplx lambda,
                 double X) {
    const EvansSystem sys = build_system(gas, profile, lambda);
    // Composite Simpson quadrature of Tr G over [0, -X].
    cplx integral = 0.0;
    if (X > 0.0) {
        int n = std::max(64, static_cast<int>(std::ceil(X / 0.01)));
        n += n % 2;  // composite Simpson needs an even panel count
        const double h = -X / n;
        cplx acc = sys.G_at(0.0).trace() + sys.G_at(-X).trace();
        for (int i = 1; i < n; ++i)
            acc += (i % 2 == 1 ? 4.0 : 2.0) * sys.G_at(i * h).trace();
        integral = acc * h / 3.0;
    }
    const Subspace Em = invariant_subspace(sys.G_minus(), false, 2);
    return std::exp(integral + Em.eigenvalue_sum * X);
}

namespace {

cplx log_value(const EvansValue& v) {
    return std::log(v.value) + v.log_scale + v.growth;
}

}  // namespace

std::vector<FactorizationRow> factorization_check(const GasParams& gas,
                                                  const ProfileSolution& profile,
                                                  cplx lambda,
                                                  const std::vector<double>& X_list,
                                                  double L) {
    const EvansValue Dm = evans_constant(gas, profile, lambda);
    const EvansValue Ds = evans_shock(gas, profile, lambda, L);
    std::vector<FactorizationRow> rows;
    for (const double X : X_list) {
        const EvansValue DX = evans_boundary(gas, profile, lambda, X, L);
        const cplx log_beta = std::log(beta_factor(gas, profile, lambda, X));
        const cplx log_r = log_value(DX) - log_beta - log_value(Dm) - log_value(Ds);
        rows.push_back({X, std::exp(log_r)});
    }
    return rows;
}

StabilityIndex stability_index(const GasParams& gas, const ProfileSolution& profile,
                               double X, double lambda_min, double lambda_max,
                               int n_grid) {
    if (!(lambda_min > 0.0 && lambda_max > lambda_min && n_grid >= 2))
        throw domain_error("stability_index: bad grid parameters");
    const double rate = std::abs(profile.tail_rate);
    const double Lint = X + (rate > 0.0 ? std::max(12.0, 12.0 / rate) : 12.0);
    const Vec10c w0 = wedge(boundary_kernel(BoundaryType::DirichletInflow));
    Vec10c prev = Vec10c::Zero();
    std::vector<double> Ds;
    for (int i = 0; i < n_grid; ++i) {
        const double lam =
            lambda_min * std::pow(lambda_max / lambda_min, double(i) / (n_grid - 1));
        const EvansSystem sys = build_system(gas, profile, cplx(lam, 0.0));
        const Subspace Ep = invariant_subspace(sys.G_plus(), true, 3);
        Vec10c w3 = init_wedge(Ep, true);
        if (i > 0 && std::real(prev.dot(w3)) < 0.0) w3 = -w3;
        prev = w3;
        const WedgeResult r3 = propagate_wedge(sys, 3, Lint, -X, w3, Ep.eigenvalue_sum);
        Ds.push_back(std::real(wedge_pair(w0, r3.omega)));
    }
    StabilityIndex si;
    si.D_at_min = Ds.front();
    si.D_at_max = Ds.back();
    si.sign_changes = 0;
    for (std::size_t i = 0; i + 1 < Ds.size(); ++i)
        if (Ds[i] * Ds[i + 1] < 0.0) ++si.sign_changes;
    const double tol = 1e-12;
    if (std::abs(Ds.front()) < tol || std::abs(Ds.back()) < tol)
        si.index = 0;
    else
        si.index = (Ds.front() > 0.0) == (Ds.back() > 0.0) ? 1 : -1;
    return si;
}

int winding_number(const std::vector<cplx>& values) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        if (values[i] == 0.0 || values[i + 1] == 0.0)
            throw numerical_error("winding_number: zero on the contour");
        total += std::arg(values[i + 1] / values[i]);
    }
    const double turns = total / (2.0 * M_PI);
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) >= 0.1)
        throw numerical_error("winding_number: residual " +
                              std::to_string(std::abs(turns - rounded)) +
                              " >= 0.1; refine the contour");
    return static_cast<int>(rounded);
}

int zero_count(const GasParams& gas, const ProfileSolution& profile, double X,
               double R, int n_points, double L, double axis_shift) {
    // Closed contour, parametrized by t in [0, 1): right semicircle of radius
    // R for t in [0, 2/3] (points clamped to Re >= axis_shift), closed by the
    // vertical segment at Re = axis_shift, traversed counterclockwise.
    auto point = [&](double t) -> cplx {
        if (t <= 2.0 / 3.0) {
            const double th = -M_PI / 2 + M_PI * (1.5 * t);
            cplx z = R * std::exp(cplx(0.0, th));
            if (std::real(z) < axis_shift) z = cplx(axis_shift, std::imag(z));
            return z;
        }
        const double s = 3.0 * (t - 2.0 / 3.0);
        return cplx(axis_shift, R - 2.0 * R * s);
    };
    // The winding is sampled from the shifted pairing itself.  The removed
    // gauge factor exp(sum*(x1-x0)) is analytic and nonvanishing in lambda
    // (the eigenvalue sum of a spectral group is analytic wherever the
    // consistent splitting holds), so the shifted pairing has exactly the
    // zeros of the determinant, while its phase varies slowly.  No phase
    // gauge is applied to the initial wedge: the per-point eigenbasis
    // normalization is a single-valued function of lambda, so its isolated
    // jump discontinuities contribute no net winding around the closed
    // contour.  (Successive phase alignment must not be used here: it is a
    // discrete Berry transport whose holonomy around a closed loop is
    // nonzero.)
    const Vec10c w0 = wedge(boundary_kernel(BoundaryType::DirichletInflow));
    const int max_evals = 400 * std::max(n_points, 16);
    int evals = 0;
    auto eval = [&](double t) -> cplx {
        if (++evals > max_evals)
            throw numerical_error("zero_count: contour refinement did not "
                                  "converge within the evaluation budget");
        const EvansSystem sys = build_system(gas, profile, point(t));
        const Subspace Ep = invariant_subspace(sys.G_plus(), true, 3);
        const Vec10c w3 = init_wedge(Ep, false);
        const WedgeResult r3 =
            propagate_wedge(sys, 3, L, -X, w3, Ep.eigenvalue_sum);
        const cplx v = wedge_pair(w0, r3.omega);
        if (v == 0.0)
            throw numerical_error("zero_count: zero on the contour");
        return v;
    };
    // Midpoint-verified adaptive refinement.  An interval is accepted only
    // when the phase steps of both halves are small and their sum matches
    // the step across the whole interval; an interval whose endpoints alias
    // a fast rotation (apparent step small, true step near a multiple of
    // 2*pi) fails this consistency check and keeps splitting.  An interval
    // narrower than the width floor is an isolated normalization jump and is
    // accepted with its principal value, which must stay well below pi.
    const double resolve_tol = 0.5, consistency_tol = 0.05, jump_tol = 2.5,
                 t_floor = 1e-7;
    double total = 0.0;
    auto accept = [&](const cplx& va, const cplx& vb) {
        const double da = std::arg(vb / va);
        if (std::abs(da) > jump_tol)
            throw numerical_error("zero_count: unresolved phase step of " +
                                  std::to_string(da) + " rad on the contour");
        total += da;
    };
    auto resolve = [&](auto&& self, double ta, const cplx& va, double tb,
                       const cplx& vb) -> void {
        if (tb - ta <= t_floor) {
            accept(va, vb);
            return;
        }
        const double tm = ta + 0.5 * (tb - ta);
        const cplx vm = eval(tm);
        const double d1 = std::arg(vm / va), d2 = std::arg(vb / vm);
        const double dw = std::arg(vb / va);
        if (std::abs(d1) > resolve_tol || std::abs(d2) > resolve_tol ||
            std::abs(d1 + d2 - dw) > consistency_tol) {
            self(self, ta, va, tm, vm);
            self(self, tm, vm, tb, vb);
        } else {
            total += d1 + d2;
        }
    };
    std::vector<cplx> base(n_points);
    for (int i = 0; i < n_points; ++i) base[i] = eval(double(i) / n_points);
    for (int i = 0; i < n_points; ++i)
        resolve(resolve, double(i) / n_points, base[i],
                double(i + 1) / n_points, base[(i + 1) % n_points]);
    const double turns = total / (2.0 * M_PI);
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) >= 0.1)
        throw numerical_error("zero_count: winding residual " +
                              std::to_string(std::abs(turns - rounded)) +
                              " >= 0.1");
    return static_cast<int>(rounded);
}

TransportedBases limiting_bases(const GasParams& gas, const ProfileSolution& profile,
                                const std::vector<cplx>& lambda_path) {
    if (lambda_path.empty()) throw domain_error("limiting_bases: empty path");
    auto orthonormal = [](const Eigen::MatrixXcd& V) {
        const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(V);
        return Eigen::MatrixXcd(
            qr.householderQ() * Eigen::MatrixXcd::Identity(V.rows(), V.cols()));
    };
    auto transport = [&](Eigen::MatrixXcd W, bool stable, int k,
                         auto limit_matrix) -> Eigen::MatrixXcd {
        for (std::size_t i = 1; i < lambda_path.size(); ++i) {
            const Mat5c G = limit_matrix(lambda_path[i]);
            const Eigen::MatrixXcd Q =
                orthonormal(invariant_subspace(G, stable, k).columns);
            W = orthonormal((Q * Q.adjoint()) * W);
        }
        return W;
    };
    auto Gp = [&](cplx lam) { return build_system(gas, profile, lam).G_plus(); };
    auto Gm = [&](cplx lam) { return build_system(gas, profile, lam).G_minus(); };

    TransportedBases tb;
    tb.E_plus_stable = orthonormal(
        invariant_subspace(Gp(lambda_path.front()), true, 3).columns);
    tb.E_minus_unstable = orthonormal(
        invariant_subspace(Gm(lambda_path.front()), false, 2).columns);
    tb.F_minus_stable = orthonormal(
        invariant_subspace(Gm(lambda_path.front()), true, 3).columns);
    tb.E_plus_stable = transport(tb.E_plus_stable, true, 3, Gp);
    tb.E_minus_unstable = transport(tb.E_minus_unstable, false, 2, Gm);
    tb.F_minus_stable = transport(tb.F_minus_stable, true, 3, Gm);
    return tb;
}

}  // namespace shockline
