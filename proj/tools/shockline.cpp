// shockline: spectral stability of ideal-gas shock and boundary layers.
//
// Subcommands map 1:1 onto the library operations: endstates, profile,
// deltas, curve, transition, sweep, evans, index, audit, cross-validate.
// Exit codes: 0 success, 2 domain/config error, 3 numerical failure.

#include "shockline/evans.hpp"
#include "shockline/io.hpp"
#include "shockline/lopatinski.hpp"
#include "shockline/transition.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

using json = nlohmann::ordered_json;
using namespace shockline;

namespace {

struct GasOptions {
    int n_atoms = 0;  // 0 = explicit constants
    double gamma = 0.0;
    double mu = 1.0;
    double eta2 = 0.0;
    double kappa = 1.0;
    double cv = 1.0;

    GasParams resolve() const {
        if (n_atoms > 0) return kinetic_gas(n_atoms);
        if (!(gamma > 1.0))
            throw domain_error("gas: provide --n-atoms or an explicit --gamma > 1");
        return make_gas(gamma, mu, eta2, kappa, cv);
    }
};

void add_gas_options(CLI::App* cmd, GasOptions& g, std::string& config_path) {
    cmd->add_option("--n-atoms", g.n_atoms,
                    "Kinetic-theory preset: atoms per molecule (1 -> gamma=5/3, "
                    "2 -> gamma=7/5; sets mu=1, eta2=-2/3, nu=mu(9gamma-5)/4)");
    cmd->add_option("--gamma", g.gamma, "Adiabatic exponent (explicit gas)");
    cmd->add_option("--mu", g.mu, "First (shear) viscosity");
    cmd->add_option("--eta2", g.eta2, "Second viscosity");
    cmd->add_option("--kappa", g.kappa, "Heat conductivity");
    cmd->add_option("--cv", g.cv, "Specific heat at constant volume");
    cmd->add_option("--config", config_path,
                    "Flat key = value config file; command-line flags override");
}

// Expand "--config FILE" into explicit flags before parsing: every key in
// the file becomes "--key value" unless that flag is already on the command
// line.  Boolean keys use the values true/false.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
    }
    if (path.empty()) return args;
    for (const auto& [key, value] : parse_config_file(path)) {
        const std::string flag = "--" + key;
        bool present = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
        if (present) continue;
        if (value == "false") continue;
        args.push_back(flag);
        if (value != "true") args.push_back(value);
    }
    return args;
}

void emit(const std::string& output, const std::string& text) {
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(output, std::ios::binary);
        if (!f) throw domain_error("cannot open output file: " + output);
        f << text;
    }
}

std::string verdict_name(Verdict1D v) {
    switch (v) {
        case Verdict1D::Stable: return "Stable";
        case Verdict1D::Unstable: return "Unstable";
        default: return "Marginal";
    }
}

std::string curve_verdict_name(CurveVerdict v) {
    switch (v) {
        case CurveVerdict::Avoids: return "Avoids";
        case CurveVerdict::Intersects: return "Intersects";
        default: return "Marginal";
    }
}

json json_vec(const Vec4& v) { return json::array({v[0], v[1], v[2], v[3]}); }

double default_evans_L(const GasParams& gas, const ShockData& shock) {
    return 12.0 / linearization_minus(gas, shock).omega_minus;
}

// ---------------------------------------------------------------- subcommands

int cmd_endstates(const GasOptions& g, double uplus, const std::string& output) {
    const GasParams gas = g.resolve();
    const ShockData sd = endstates(gas, uplus);
    const Vec4 cm = char_speeds(gas, sd.U_minus);
    const Vec4 cp = char_speeds(gas, sd.U_plus);
    json j;
    j["u_plus"] = sd.u_plus;
    j["u_star"] = sd.u_star;
    j["alpha"] = sd.alpha;
    j["e_minus"] = sd.e_minus;
    j["e_plus"] = sd.e_plus;
    j["rho_plus"] = sd.rho_plus;
    j["U_minus"] = json_vec(sd.U_minus.U);
    j["U_plus"] = json_vec(sd.U_plus.U);
    j["char_speeds_minus"] = json_vec(cm);
    j["char_speeds_plus"] = json_vec(cp);
    emit(output, j.dump(2) + "\n");
    return 0;
}

int cmd_profile(const GasOptions& g, double uplus, double xmax, double tol,
                const std::string& format, const std::string& output) {
    const GasParams gas = g.resolve();
    const ShockData sd = endstates(gas, uplus);
    const ProfileSolution prof = solve_profile(gas, sd, xmax, tol);
    if (format == "json") {
        json j;
        j["L"] = prof.L;
        j["tail_rate"] = prof.tail_rate;
        j["omega_minus"] = linearization_minus(gas, sd).omega_minus;
        j["n_nodes"] = prof.grid.size();
        json rows = json::array();
        for (std::size_t i = 0; i < prof.grid.size(); ++i)
            rows.push_back(json::array(
                {prof.grid[i], prof.values[i][0], prof.values[i][1],
                 prof.derivs[i][0], prof.derivs[i][1]}));
        j["columns"] = json::array({"x", "u", "e", "du_dx", "de_dx"});
        j["rows"] = rows;
        emit(output, j.dump(2) + "\n");
    } else {
        CsvTable t;
        t.header = {"x", "u", "e", "du_dx", "de_dx"};
        for (std::size_t i = 0; i < prof.grid.size(); ++i)
            t.rows.push_back({format_sci17(prof.grid[i]),
                              format_sci17(prof.values[i][0]),
                              format_sci17(prof.values[i][1]),
                              format_sci17(prof.derivs[i][0]),
                              format_sci17(prof.derivs[i][1])});
        std::ostringstream ss;
        write_csv(ss, t);
        emit(output, ss.str());
    }
    std::cerr << "profile: n=" << prof.grid.size() << " L=" << prof.L
              << " tail_rate=" << prof.tail_rate << "\n";
    return 0;
}

int cmd_deltas(const GasOptions& g, double uplus, const std::string& output) {
    const GasParams gas = g.resolve();
    const ShockData sd = endstates(gas, uplus);
    const DeltaHat dh = delta_hat(gas, sd);
    const Verdict1DResult v = onedim_verdict(gas, sd);
    json j;
    j["u_plus"] = uplus;
    j["delta"] = v.delta;            // ell_+ . [U]
    j["delta_hat"] = v.delta_hat;    // ell_+ . dF1(U_-) S
    j["delta_det"] = dh.delta_A;     // det(R_+ | [U])
    j["delta_hat_det"] = dh.path_A;  // det(R_+ | dF1(U_-) S)
    j["product"] = v.product;
    j["verdict"] = verdict_name(v.verdict);
    emit(output, j.dump(2) + "\n");
    std::cout << "verdict=" << verdict_name(v.verdict) << " delta=" << v.delta
              << " delta_hat=" << v.delta_hat << "\n";
    return 0;
}

int cmd_curve(const GasOptions& g, double uplus, double tau_max, double tol,
              const std::string& format, const std::string& output) {
    const GasParams gas = g.resolve();
    const ShockData sd = endstates(gas, uplus);
    const auto curve = trace_eta_curve(gas, sd, tau_max, 400, tol);
    const IntersectionResult ir = curve_axis_intersection(curve, tol);
    if (format == "json") {
        json j;
        j["verdict"] = curve_verdict_name(ir.verdict);
        if (ir.tau_star) j["tau_star"] = *ir.tau_star;
        json rows = json::array();
        for (const auto& p : curve)
            rows.push_back(json::array(
                {p.tau, std::real(p.eta), std::imag(p.eta), p.pole}));
        j["columns"] = json::array({"tau", "re_eta", "im_eta", "pole"});
        j["rows"] = rows;
        emit(output, j.dump(2) + "\n");
    } else {
        CsvTable t;
        t.header = {"tau", "re_eta", "im_eta"};
        for (const auto& p : curve)
            t.rows.push_back({format_sci17(p.tau), format_sci17(std::real(p.eta)),
                              format_sci17(std::imag(p.eta))});
        std::ostringstream ss;
        write_csv(ss, t);
        emit(output, ss.str());
    }
    std::cout << "curve_verdict=" << curve_verdict_name(ir.verdict);
    if (ir.tau_star) std::cout << " tau_star=" << *ir.tau_star;
    std::cout << "\n";
    return 0;
}

int cmd_transition(const GasOptions& g, double umin, double umax, double tol,
                   const std::string& output) {
    const GasParams gas = g.resolve();
    double lo = umin, hi = umax;
    if (lo == 0.0 || hi == 0.0) {
        const double us = gas.Gamma / (gas.Gamma + 2.0);
        if (lo == 0.0) lo = us + 1e-3;
        if (hi == 0.0) hi = 1.0 - 1e-3;
    }
    const TransitionResult tr = find_transition(gas, lo, hi, tol);
    json j;
    j["found"] = tr.found;
    j["bracket"] = json::array({tr.bracket_lo, tr.bracket_hi});
    j["side_signs"] = json::array({tr.sign_lo, tr.sign_hi});
    if (tr.found) {
        j["u_star_transition"] = tr.u_star_transition;
        j["residual"] = tr.residual;
    }
    emit(output, j.dump(2) + "\n");
    if (tr.found)
        std::cout << "transition=found u_plus=" << format_sci17(tr.u_star_transition)
                  << " residual=" << tr.residual << "\n";
    else
        std::cout << "transition=none side_signs=" << tr.sign_lo << "," << tr.sign_hi
                  << "\n";
    return 0;
}

int cmd_sweep(const GasOptions& g, double umin, double umax, int usteps, bool md,
              double tau_max, double tol, const std::string& format,
              const std::string& output) {
    const GasParams gas = g.resolve();
    const double us = gas.Gamma / (gas.Gamma + 2.0);
    if (umin == 0.0) umin = us + 1e-3;
    if (umax == 0.0) umax = 1.0 - 1e-3;
    const std::vector<double> grid = linspace(umin, umax, usteps);
    std::vector<SweepRow> rows;
    if (md) {
        CurveParams cp;
        cp.tau_max = tau_max;
        cp.refine_tol = tol;
        rows = sweep_md(gas, grid, cp);
    } else {
        rows = sweep_1d(gas, grid);
    }
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            json j;
            j["u_plus"] = r.u_plus;
            j["e_minus"] = r.e_minus;
            j["delta"] = r.delta;
            j["delta_hat"] = r.delta_hat;
            j["verdict_1d"] = verdict_name(r.verdict_1d);
            if (r.eta_curve_verdict)
                j["eta_curve_verdict"] = curve_verdict_name(*r.eta_curve_verdict);
            if (!r.error.empty()) j["error"] = r.error;
            arr.push_back(j);
        }
        emit(output, arr.dump(2) + "\n");
    } else {
        CsvTable t;
        t.header = {"u_plus", "e_minus", "delta", "delta_hat", "verdict_1d"};
        if (md) t.header.push_back("eta_curve_verdict");
        t.header.push_back("error");
        for (const auto& r : rows) {
            std::vector<std::string> row = {
                format_sci17(r.u_plus), format_sci17(r.e_minus),
                format_sci17(r.delta), format_sci17(r.delta_hat),
                verdict_name(r.verdict_1d)};
            if (md)
                row.push_back(r.eta_curve_verdict
                                  ? curve_verdict_name(*r.eta_curve_verdict)
                                  : "");
            row.push_back(r.error);
            t.rows.push_back(row);
        }
        std::ostringstream ss;
        write_csv(ss, t);
        emit(output, ss.str());
    }
    int unstable = 0;
    for (const auto& r : rows)
        if (r.verdict_1d == Verdict1D::Unstable) ++unstable;
    std::cerr << "sweep: " << rows.size() << " points, " << unstable
              << " unstable\n";
    return 0;
}

int cmd_evans(const GasOptions& g, double uplus, double lmin, double lmax, int steps,
              double xmax, const std::string& format, const std::string& output) {
    const GasParams gas = g.resolve();
    const ShockData sd = endstates(gas, uplus);
    const double L = xmax > 0.0 ? xmax : default_evans_L(gas, sd);
    const ProfileSolution prof = solve_profile(gas, sd, L, 1e-12);
    CsvTable t;
    t.header = {"lambda", "re_D", "im_D", "log_scale"};
    json arr = json::array();
    for (int i = 0; i < steps; ++i) {
        const double lam =
            steps > 1 ? lmin * std::pow(lmax / lmin, double(i) / (steps - 1)) : lmin;
        const EvansValue v = evans_shock(gas, prof, cplx(lam, 0.0), L);
        t.rows.push_back({format_sci17(lam), format_sci17(std::real(v.value)),
                          format_sci17(std::imag(v.value)),
                          format_sci17(v.log_scale)});
        arr.push_back(json::array(
            {lam, std::real(v.value), std::imag(v.value), v.log_scale}));
    }
    if (format == "json") {
        json j;
        j["columns"] = json::array({"lambda", "re_D", "im_D", "log_scale"});
        j["rows"] = arr;
        j["L"] = L;
        emit(output, j.dump(2) + "\n");
    } else {
        std::ostringstream ss;
        write_csv(ss, t);
        emit(output, ss.str());
    }
    return 0;
}

int cmd_index(const GasOptions& g, double uplus, double X, double lmin, double lmax,
              const std::string& output) {
    const GasParams gas = g.resolve();
    const ShockData sd = endstates(gas, uplus);
    const AsymptoticData asym = linearization_minus(gas, sd);
    if (X <= 0.0) X = 8.0 / asym.omega_minus;
    const double L = std::max(default_evans_L(gas, sd), X + 6.0);
    const ProfileSolution prof = solve_profile(gas, sd, L, 1e-12);
    const StabilityIndex si = stability_index(gas, prof, X, lmin, lmax, 200);
    json j;
    j["u_plus"] = uplus;
    j["X"] = X;
    j["index"] = si.index;
    j["sign_changes"] = si.sign_changes;
    j["D_at_lambda_min"] = si.D_at_min;
    j["D_at_lambda_max"] = si.D_at_max;
    emit(output, j.dump(2) + "\n");
    std::cout << "index=" << (si.index > 0 ? "+1" : (si.index < 0 ? "-1" : "0"))
              << " sign_changes=" << si.sign_changes << "\n";
    return 0;
}

int cmd_audit(const GasOptions& g, const std::string& output) {
    const GasParams gas = g.resolve();
    const AuditReport rep = audit_report(gas);
    json arr = json::array();
    for (const auto& e : rep.entries) {
        json j;
        j["formula"] = e.formula;
        j["status"] = e.status;
        j["residual"] = e.residual;
        j["detail"] = e.detail;
        arr.push_back(j);
        std::cout << e.formula << ": " << e.status << " (residual " << e.residual
                  << ")\n";
    }
    emit(output, arr.dump(2) + "\n");
    return 0;
}

int cmd_cross_validate(const GasOptions& g, std::vector<double> us,
                       std::vector<double> Xs, bool zero_counts,
                       const std::string& output) {
    const GasParams gas = g.resolve();
    const double ustar = gas.Gamma / (gas.Gamma + 2.0);
    if (us.empty()) us = {0.9, ustar + 0.02};
    CrossValidationReport rep;
    if (Xs.empty()) {
        for (const double u : us) {
            const double om =
                linearization_minus(gas, endstates(gas, u)).omega_minus;
            const auto part = cross_validate(gas, {u}, {8.0 / om}, zero_counts);
            rep.rows.insert(rep.rows.end(), part.rows.begin(), part.rows.end());
            rep.n_match += part.n_match;
            rep.n_mismatch += part.n_mismatch;
            rep.n_excluded += part.n_excluded;
        }
    } else {
        rep = cross_validate(gas, us, Xs, zero_counts);
    }
    json j;
    j["n_match"] = rep.n_match;
    j["n_mismatch"] = rep.n_mismatch;
    j["n_excluded"] = rep.n_excluded;
    json arr = json::array();
    for (const auto& r : rep.rows) {
        json e;
        e["u_plus"] = r.u_plus;
        e["X"] = r.X;
        e["evans_index"] = r.evans_index;
        e["sign_delta_deltahat"] = r.sign_dd;
        e["match"] = r.match;
        e["excluded"] = r.excluded;
        if (r.zero_ct) e["zero_count"] = *r.zero_ct;
        if (r.parity_ok) e["parity_ok"] = *r.parity_ok;
        if (!r.error.empty()) e["error"] = r.error;
        arr.push_back(e);
    }
    j["rows"] = arr;
    emit(output, j.dump(2) + "\n");
    std::cout << "cross-validate: match=" << rep.n_match
              << " mismatch=" << rep.n_mismatch << " excluded=" << rep.n_excluded
              << "\n";
    return rep.n_mismatch == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "shockline: spectral stability of ideal-gas viscous shock and "
        "boundary layers in the standing-shock limit"};
    app.require_subcommand(1);

    GasOptions gas;
    double uplus = 0.5, umin = 0.0, umax = 0.0, xmax = 0.0, tol = 0.0;
    double tau_max = 50.0, lmin = 1e-4, lmax = 4.0, X = 0.0;
    int usteps = 50, lsteps = 20;
    bool md = false, no_zero_count = false;
    std::vector<double> u_list, X_list;
    std::string format, output, config_path;
    std::map<CLI::App*, std::string> default_format;

    auto add_common = [&](CLI::App* c, bool json_default = false) {
        add_gas_options(c, gas, config_path);
        c->add_option("-o,--output", output, "Output file (default: stdout)");
        c->add_option("--format", format, "Output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        default_format[c] = json_default ? "json" : "csv";
        return c;
    };

    auto* c_end = add_common(
        app.add_subcommand("endstates",
                           "Rankine-Hugoniot endstates, alpha, and characteristic "
                           "speeds of the normalized standing shock"),
        true);
    c_end->add_option("--uplus", uplus, "Downstream velocity u+ in (u*, 1]")
        ->required();

    auto* c_prof = add_common(app.add_subcommand(
        "profile", "Viscous shock profile (u,e)(x): connecting-orbit ODE solve "
                   "with tail-rate fit against the slow eigenvalue omega_-"));
    c_prof->add_option("--uplus", uplus)->required();
    c_prof->add_option("--xmax", xmax, "Half-length L of the reported grid");
    c_prof->add_option("--tol", tol, "Endpoint convergence tolerance");

    auto* c_del = add_common(
        app.add_subcommand("deltas",
                           "One-dimensional determinants delta = ell+.[U] and "
                           "delta_hat = ell+.dF1(U-)S, and the stability verdict "
                           "sgn(delta*delta_hat)"),
        true);
    c_del->add_option("--uplus", uplus)->required();

    auto* c_curve = add_common(app.add_subcommand(
        "curve", "Trace the multi-D test curve eta_hat(1, i*tau) and report "
                 "whether it avoids the nonnegative real axis"));
    c_curve->add_option("--uplus", uplus)->required();
    c_curve->add_option("--tau-max", tau_max, "Largest tau sampled");
    c_curve->add_option("--tol", tol, "Refinement/axis tolerance");

    auto* c_trans = add_common(
        app.add_subcommand("transition",
                           "Bisect delta_hat(u+) for the stability-transition "
                           "root in a u+ bracket"),
        true);
    c_trans->add_option("--u-min", umin, "Bracket start (default u*+1e-3)");
    c_trans->add_option("--u-max", umax, "Bracket end (default 1-1e-3)");
    c_trans->add_option("--tol", tol, "Residual tolerance on delta_hat");

    auto* c_sweep = add_common(app.add_subcommand(
        "sweep", "Sweep u+ and report delta, delta_hat, verdicts per point"));
    c_sweep->add_option("--u-min", umin);
    c_sweep->add_option("--u-max", umax);
    c_sweep->add_option("--u-steps", usteps, "Number of grid points");
    c_sweep->add_flag("--md", md, "Add the multi-D eta_hat curve verdict");
    c_sweep->add_option("--tau-max", tau_max);
    c_sweep->add_option("--tol", tol);

    auto* c_evans = add_common(app.add_subcommand(
        "evans", "Evaluate the shock Evans function D(lambda) on a real "
                 "lambda grid (compound-matrix method)"));
    c_evans->add_option("--uplus", uplus)->required();
    c_evans->add_option("--lambda-min", lmin);
    c_evans->add_option("--lambda-max", lmax);
    c_evans->add_option("--lambda-steps", lsteps);
    c_evans->add_option("--xmax", xmax, "Integration half-length L (default 12/omega_-)");

    auto* c_index = add_common(
        app.add_subcommand("index",
                           "Boundary-layer stability index: sign of D_X on "
                           "(0, lambda_max], +1 = consistent with stability"),
        true);
    c_index->add_option("--uplus", uplus)->required();
    c_index->add_option("--X", X, "Layer depth (default 8/omega_-)");
    c_index->add_option("--lambda-min", lmin);
    c_index->add_option("--lambda-max", lmax);

    auto* c_audit = add_common(
        app.add_subcommand("audit",
                           "Check the closed-form display formulas against "
                           "first-principles numerics; per-formula residuals"),
        true);

    auto* c_cv = add_common(
        app.add_subcommand("cross-validate",
                           "Independent consistency check: Evans stability index "
                           "vs sgn(delta*delta_hat), plus zero-count parity"),
        true);
    c_cv->add_option("--uplus", u_list, "u+ samples (default {0.9, u*+0.02})");
    c_cv->add_option("--X", X_list, "Layer depths (default 8/omega_- per sample)");
    c_cv->add_flag("--no-zero-count", no_zero_count,
                   "Skip the argument-principle parity check");

    try {
        std::vector<std::string> args =
            expand_config(std::vector<std::string>(argv + 1, argv + argc));
        std::reverse(args.begin(), args.end());  // CLI11 expects reversed args
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const domain_error& e) {
        std::cerr << "error (domain/config): " << e.what() << "\n";
        return 2;
    }
    if (format.empty())
        for (const auto& [cmd, fmt] : default_format)
            if (cmd->parsed()) format = fmt;

    try {
        if (c_end->parsed()) return cmd_endstates(gas, uplus, output);
        if (c_prof->parsed())
            return cmd_profile(gas, uplus, xmax > 0 ? xmax : 20.0,
                               tol > 0.0 ? tol : 1e-12, format, output);
        if (c_del->parsed()) return cmd_deltas(gas, uplus, output);
        if (c_curve->parsed())
            return cmd_curve(gas, uplus, tau_max, tol > 0.0 ? tol : 1e-6, format,
                             output);
        if (c_trans->parsed())
            return cmd_transition(gas, umin, umax, tol > 0.0 ? tol : 1e-10,
                                  output);
        if (c_sweep->parsed())
            return cmd_sweep(gas, umin, umax, usteps, md, tau_max,
                             tol > 0.0 ? tol : 1e-6, format, output);
        if (c_evans->parsed())
            return cmd_evans(gas, uplus, lmin, lmax, lsteps, xmax, format, output);
        if (c_index->parsed()) return cmd_index(gas, uplus, X, lmin, lmax, output);
        if (c_audit->parsed()) return cmd_audit(gas, output);
        if (c_cv->parsed())
            return cmd_cross_validate(gas, u_list, X_list, !no_zero_count, output);
    } catch (const domain_error& e) {
        std::cerr << "error (domain/config): " << e.what() << "\n";
        return 2;
    } catch (const numerical_error& e) {
        std::cerr << "error (numerical): " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
