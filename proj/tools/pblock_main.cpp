// pblock_main.cpp — Command-line front end: single-point solves, parameter
// sweeps, and the figure-reproduction scans. All commands read a flat
// key-value config file and write CSV plus a manifest sidecar (or a key-value
// summary record).

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "pblock/analytics.hpp"
#include "pblock/csvio.hpp"
#include "pblock/manifest.hpp"
#include "pblock/observables.hpp"
#include "pblock/solver.hpp"
#include "pblock/sweep.hpp"

namespace {

using namespace pblock;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitObservable = 4;

struct SummaryRecord {
    std::vector<std::pair<std::string, std::string>> fields;

    void add(const std::string& key, const std::string& value) {
        fields.emplace_back(key, value);
    }
    void add(const std::string& key, double value) { add(key, sci(value)); }

    void emit(const std::optional<std::string>& out_path) const {
        for (const auto& [k, v] : fields) std::cout << k << " = " << v << "\n";
        if (out_path) {
            std::ofstream out(*out_path, std::ios::binary);
            if (!out) throw Error("summary: cannot open " + *out_path);
            for (const auto& [k, v] : fields) out << k << " = " << v << "\n";
        }
    }
};

void finalize_manifest(RunManifest& manifest, const std::optional<std::string>& out_path) {
    if (out_path) manifest.write(*out_path + ".manifest");
}

std::string regime_name(TemperatureRegime r) {
    switch (r) {
        case TemperatureRegime::quantum: return "quantum";
        case TemperatureRegime::crossover: return "crossover";
        default: return "thermal";
    }
}

// ---------------------------------------------------------------------------

int cmd_steady(const Config& cfg, const std::optional<std::string>& out_path) {
    const SystemParams params = system_params_from(cfg);
    const FockBasis basis = basis_from(cfg);
    RunManifest manifest = RunManifest::begin("steady", cfg.entries());
    if (!truncation_adequate(params, basis)) {
        manifest.warnings.push_back("truncation guard: n_th exceeds n_max/10");
    }

    const Superoperator l = build_liouvillian(params, basis);
    const SteadyStateReport rep = steady_state(l);
    const double g2 = g2_zero(rep.rho, Mode::one);

    SummaryRecord rec;
    rec.add("g2_zero", g2);
    rec.add("mean_phonon_1", mean_phonon(rep.rho, Mode::one));
    rec.add("mean_phonon_2", mean_phonon(rep.rho, Mode::two));
    rec.add("residual", rep.residual);
    rec.add("method", rep.method == SteadyMethod::trace_replacement
                          ? "trace-replacement" : "smallest-eigenpair");
    rec.add("hermitization_delta", rep.hermitization_delta);
    rec.add("min_eigenvalue", rep.min_eigenvalue);

    // analytic column only where the strong-coupling expansion is meaningful
    if (params.coupling_j >= 5.0 * params.gamma) {
        rec.add("g2_analytic", g2_analytic(params));
    } else {
        rec.add("g2_analytic", std::string("n/a (J < 5 gamma)"));
    }

    const PhononDistribution dist = phonon_distribution(rep.rho, Mode::one);
    const PhononDistribution pois = poisson_reference(dist.mean, basis.n1_max);
    rec.add("mean_for_poisson", dist.mean);
    for (size_t m = 0; m < dist.probabilities.size(); ++m) {
        rec.add("p" + std::to_string(m), dist.probabilities[m]);
        rec.add("poisson" + std::to_string(m), pois.probabilities[m]);
    }
    rec.emit(out_path);
    manifest.point_residuals.push_back(rep.residual);
    finalize_manifest(manifest, out_path);
    return kExitOk;
}

int cmd_sweep(const Config& cfg, const std::string& out_path) {
    const SweepSpec spec = sweep_from(cfg);
    RunManifest manifest = RunManifest::begin("sweep", cfg.entries());
    const std::vector<SweepPoint> points = run_sweep(spec, worker_count_from_env());

    CsvWriter csv(out_path, {spec.axis1.param, spec.axis2.param, "g2_zero",
                             "log10_g2_zero", "mean_phonon", "residual", "status"});
    for (const SweepPoint& pt : points) {
        if (pt.error.empty()) {
            csv.row({sci(pt.axis1), sci(pt.axis2), sci(pt.g2),
                     sci(std::log10(pt.g2)), sci(pt.mean_phonon), sci(pt.residual), "ok"});
        } else {
            csv.row({sci(pt.axis1), sci(pt.axis2), "nan", "nan", "nan", "nan",
                     "ERR:" + pt.error});
        }
        manifest.point_residuals.push_back(pt.residual);
        manifest.point_errors.push_back(pt.error);
        if (pt.truncation_warning && manifest.warnings.empty()) {
            manifest.warnings.push_back("truncation guard: n_th exceeds n_max/10");
        }
    }
    finalize_manifest(manifest, out_path);
    return kExitOk;
}

int cmd_tscan(const Config& cfg, const std::string& out_path) {
    SystemParams base = system_params_from(cfg);
    const FockBasis basis = basis_from(cfg);
    AxisSpec axis;
    axis.param = "t_over_t0";
    axis.min = cfg.get_double("t_min");
    axis.max = cfg.get_double("t_max");
    axis.n_points = cfg.get_int("t_points");
    axis.log_spacing = cfg.get_string("t_spacing", "log") == "log";
    if (axis.min < 0.0) throw ConfigError("tscan: t_min must be non-negative");
    const std::vector<double> temps = axis_values(axis);

    const RegimeBoundaries bounds = boundary_temperatures(base);
    RunManifest manifest = RunManifest::begin("tscan", cfg.entries());

    std::vector<SweepPoint> points(temps.size());
    parallel_for(static_cast<int>(temps.size()), worker_count_from_env(), [&](int i) {
        SystemParams p = base;
        set_param(p, "t_over_t0", temps[static_cast<size_t>(i)]);
        points[static_cast<size_t>(i)] =
            evaluate_point(p, basis, temps[static_cast<size_t>(i)], 0.0);
    });

    CsvWriter csv(out_path, {"t_over_t0", "n_th", "g2_numerical", "g2_analytic",
                             "regime", "residual", "status"});
    for (size_t i = 0; i < temps.size(); ++i) {
        const SweepPoint& pt = points[i];
        SystemParams p = base;
        set_param(p, "t_over_t0", temps[i]);
        const std::string regime = regime_name(classify_regime(temps[i], bounds));
        if (pt.error.empty()) {
            csv.row({sci(temps[i]), sci(p.n_th), sci(pt.g2), sci(g2_analytic(p)), regime,
                     sci(pt.residual), "ok"});
        } else {
            csv.row({sci(temps[i]), sci(p.n_th), "nan", "nan", regime, "nan",
                     "ERR:" + pt.error});
        }
        manifest.point_residuals.push_back(pt.residual);
        manifest.point_errors.push_back(pt.error);
    }
    SummaryRecord rec;
    rec.add("t1_over_t0", bounds.t1_over_t0);
    rec.add("t2_over_t0", bounds.t2_over_t0);
    rec.emit(std::nullopt);
    finalize_manifest(manifest, out_path);
    return kExitOk;
}

int cmd_g2tau(const Config& cfg, const std::string& out_path) {
    SystemParams base = system_params_from(cfg);
    const FockBasis basis = basis_from(cfg);
    const double tau_max = cfg.get_double("tau_max");
    const int tau_points = cfg.get_int("tau_points");
    if (tau_max <= 0.0 || tau_points < 2) {
        throw ConfigError("g2tau: need tau_max > 0 and tau_points >= 2");
    }
    const double dtau = tau_max / (tau_points - 1);
    if (base.coupling_j > 0.0 &&
        dtau > (2.0 * std::numbers::pi / base.coupling_j) / 20.0) {
        throw ConfigError("g2tau: tau grid too coarse; need dtau <= (2*pi/J)/20");
    }
    std::vector<double> temps = cfg.has("temperatures")
                                    ? cfg.get_double_list("temperatures")
                                    : std::vector<double>{0.0};
    std::vector<double> taus(static_cast<size_t>(tau_points));
    for (int i = 0; i < tau_points; ++i) taus[static_cast<size_t>(i)] = dtau * i;

    RunManifest manifest = RunManifest::begin("g2tau", cfg.entries());
    CsvWriter csv(out_path, {"t_over_t0", "tau", "g2"});
    SummaryRecord rec;
    for (double t : temps) {
        SystemParams p = base;
        set_param(p, "t_over_t0", t);
        const Superoperator l = build_liouvillian(p, basis);
        const SteadyStateReport rep = steady_state(l);
        const CorrelationSeries series = g2_tau(l, rep.rho, Mode::one, taus);
        for (size_t i = 0; i < series.taus.size(); ++i) {
            csv.row({sci(t), sci(series.taus[i]), sci(series.values[i])});
        }
        manifest.point_residuals.push_back(rep.residual);
        manifest.point_errors.push_back("");
        const TauFit fit = fit_oscillation(series);
        const std::string tag = "[t_over_t0=" + sci(t) + "]";
        rec.add("g2_zero" + tag, series.values.front());
        rec.add("period" + tag, fit.period);
        rec.add("window" + tag, fit.window);
    }
    rec.emit(std::nullopt);
    finalize_manifest(manifest, out_path);
    return kExitOk;
}

int cmd_fscan(const Config& cfg, const std::string& out_path) {
    SystemParams base = system_params_from(cfg);
    const FockBasis basis = basis_from(cfg);
    AxisSpec axis;
    axis.param = "f";
    axis.min = cfg.get_double("f_min");
    axis.max = cfg.get_double("f_max");
    axis.n_points = cfg.get_int("f_points");
    axis.log_spacing = cfg.get_string("f_spacing", "log") == "log";
    if (axis.min <= 0.0) throw ConfigError("fscan: f_min must be positive");
    const std::vector<double> drives = axis_values(axis);
    std::vector<double> temps = cfg.has("temperatures")
                                    ? cfg.get_double_list("temperatures")
                                    : std::vector<double>{0.0};

    RunManifest manifest = RunManifest::begin("fscan", cfg.entries());
    const int total = static_cast<int>(drives.size() * temps.size());
    std::vector<SweepPoint> points(static_cast<size_t>(total));
    parallel_for(total, worker_count_from_env(), [&](int idx) {
        const size_t it = static_cast<size_t>(idx) / drives.size();
        const size_t jf = static_cast<size_t>(idx) % drives.size();
        SystemParams p = base;
        set_param(p, "t_over_t0", temps[it]);
        set_param(p, "f", drives[jf]);
        points[static_cast<size_t>(idx)] = evaluate_point(p, basis, drives[jf], temps[it]);
    });

    CsvWriter csv(out_path, {"f", "t_over_t0", "g2_numerical", "g2_analytic",
                             "residual", "status"});
    for (int idx = 0; idx < total; ++idx) {
        const SweepPoint& pt = points[static_cast<size_t>(idx)];
        SystemParams p = base;
        set_param(p, "t_over_t0", pt.axis2);
        set_param(p, "f", pt.axis1);
        if (pt.error.empty()) {
            csv.row({sci(pt.axis1), sci(pt.axis2), sci(pt.g2), sci(g2_analytic(p)),
                     sci(pt.residual), "ok"});
        } else {
            csv.row({sci(pt.axis1), sci(pt.axis2), "nan", "nan", "nan",
                     "ERR:" + pt.error});
        }
        manifest.point_residuals.push_back(pt.residual);
        manifest.point_errors.push_back(pt.error);
    }
    finalize_manifest(manifest, out_path);
    return kExitOk;
}

int cmd_optimal(const Config& cfg, const std::optional<std::string>& out_path) {
    const double j = cfg.get_double("j");
    const double gamma = cfg.get_double("gamma", 1.0);
    if (j <= 0.0 || gamma <= 0.0) throw ConfigError("optimal: j and gamma must be positive");
    const bool positive_branch = !cfg.get_bool("negative_branch", false);

    const OptimalPoint exact = optimal_exact(j, gamma, positive_branch);
    const OptimalPoint approx = optimal_approx(j, gamma);
    const auto [r1, r2] = antibunching_residuals(exact.delta_opt, exact.u_opt, j, gamma);

    SummaryRecord rec;
    rec.add("delta_exact", exact.delta_opt);
    rec.add("u_exact", exact.u_opt);
    rec.add("residual_condition_1", r1);
    rec.add("residual_condition_2", r2);
    rec.add("delta_approx", approx.delta_opt);
    rec.add("u_approx", approx.u_opt);
    SystemParams at_opt{exact.delta_opt, j, exact.u_opt, 1e-3 * gamma, gamma, 0.0};
    rec.add("g2_analytic_at_optimum", g2_analytic(at_opt));
    rec.emit(out_path);

    RunManifest manifest = RunManifest::begin("optimal", cfg.entries());
    finalize_manifest(manifest, out_path);
    return kExitOk;
}

int cmd_feasibility(const Config& cfg, const std::optional<std::string>& out_path) {
    const double d = cfg.get_double("width_d");
    const double length = cfg.get_double("length_l");
    const double e = cfg.get_double("youngs_e", constants::silicon_youngs_modulus);
    const double rho = cfg.get_double("density_rho", constants::silicon_density);
    const double gamma_hz = cfg.get_double("gamma", 10e6);
    const double temperature = cfg.get_double("temperature", 0.0);
    const double j_over_gamma = cfg.get_double("j_over_gamma", 20.0);
    if (d <= 0 || length <= 0 || e <= 0 || rho <= 0 || gamma_hz <= 0) {
        throw ConfigError("feasibility: geometry and material values must be positive");
    }

    const PhysicalEstimate est = physical_estimate(d, length, e, rho);
    const double j_hz = j_over_gamma * gamma_hz;

    SummaryRecord rec;
    rec.add("omega0_rad_per_s", est.omega0);
    rec.add("frequency_hz", est.omega0 / (2.0 * std::numbers::pi));
    rec.add("u_hz", est.u_physical);
    rec.add("t0_k", est.t0);
    rec.add("n_th", est.n_th_at(temperature));
    rec.add("antibunching_window_s", std::numbers::pi / j_hz);
    // quality factor under both frequency conventions (the literature mixes them)
    rec.add("q_omega0_over_gamma", est.omega0 / gamma_hz);
    rec.add("q_f0_over_gamma", est.omega0 / (2.0 * std::numbers::pi) / gamma_hz);
    rec.emit(out_path);

    RunManifest manifest = RunManifest::begin("feasibility", cfg.entries());
    finalize_manifest(manifest, out_path);
    return kExitOk;
}

int dispatch(const std::string& cmd, const std::string& config_path,
             const std::optional<std::string>& out_path) {
    const Config cfg = Config::load(config_path);
    const bool needs_out = cmd == "sweep" || cmd == "tscan" || cmd == "g2tau" || cmd == "fscan";
    if (needs_out && !out_path) {
        throw ConfigError(cmd + ": --out is required");
    }
    if (cmd == "steady") return cmd_steady(cfg, out_path);
    if (cmd == "sweep") return cmd_sweep(cfg, *out_path);
    if (cmd == "tscan") return cmd_tscan(cfg, *out_path);
    if (cmd == "g2tau") return cmd_g2tau(cfg, *out_path);
    if (cmd == "fscan") return cmd_fscan(cfg, *out_path);
    if (cmd == "optimal") return cmd_optimal(cfg, out_path);
    if (cmd == "feasibility") return cmd_feasibility(cfg, out_path);
    throw ConfigError("unknown command " + cmd);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "pblock — steady states and phonon correlation statistics of two\n"
        "coupled mechanical resonators under a finite-temperature Lindblad\n"
        "master equation.\n\n"
        "Exit codes: 0 success, 2 config error, 3 solver failure,\n"
        "4 undefined observable.\n"
        "PBLOCK_WORKERS overrides the sweep worker count."};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_path;
    for (const char* name : {"steady", "sweep", "tscan", "g2tau", "fscan",
                             "optimal", "feasibility"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "flat key-value run file")->required();
        sub->add_option("--out", out_path, "output path (CSV or summary record)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        return dispatch(app.get_subcommands().front()->get_name(), config_path, out_path);
    } catch (const ConfigError& e) {
        std::cerr << "pblock: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "pblock: " << e.what() << "\n";
        return kExitConfig;
    } catch (const VacuumDenominator& e) {
        std::cerr << "pblock: " << e.what() << "\n";
        return kExitObservable;
    } catch (const DegenerateDenominator& e) {
        std::cerr << "pblock: " << e.what() << "\n";
        return kExitObservable;
    } catch (const UndrivenSystem& e) {
        std::cerr << "pblock: " << e.what() << "\n";
        return kExitObservable;
    } catch (const Error& e) {
        std::cerr << "pblock: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "pblock: " << e.what() << "\n";
        return 1;
    }
}
