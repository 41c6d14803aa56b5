// sweep.cpp — Grid construction and the deterministic worker pool

#include "pblock/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "pblock/observables.hpp"
#include "pblock/solver.hpp"

namespace pblock {

std::vector<double> axis_values(const AxisSpec& axis) {
    if (axis.n_points < 2) {
        throw ConfigError("axis '" + axis.param + "': need at least 2 points");
    }
    if (axis.log_spacing && (axis.min <= 0.0 || axis.max <= 0.0)) {
        throw ConfigError("axis '" + axis.param + "': log spacing requires positive endpoints");
    }
    std::vector<double> out(static_cast<size_t>(axis.n_points));
    for (int i = 0; i < axis.n_points; ++i) {
        const double t = static_cast<double>(i) / (axis.n_points - 1);
        out[static_cast<size_t>(i)] =
            axis.log_spacing
                ? std::exp(std::log(axis.min) + t * (std::log(axis.max) - std::log(axis.min)))
                : axis.min + t * (axis.max - axis.min);
    }
    return out;
}

void set_param(SystemParams& params, const std::string& name, double value) {
    if (name == "delta") params.delta = value;
    else if (name == "j") params.coupling_j = value;
    else if (name == "u") params.kerr_u = value;
    else if (name == "f") params.drive_f = value;
    else if (name == "gamma") params.gamma = value;
    else if (name == "n_th") params.n_th = value;
    else if (name == "t_over_t0") params.n_th = thermal_occupancy(Temperature{value});
    else throw ConfigError("unknown parameter '" + name + "'");
}

SystemParams system_params_from(const Config& cfg) {
    SystemParams p;
    p.delta = cfg.get_double("delta", 0.0);
    p.coupling_j = cfg.get_double("j", 0.0);
    p.kerr_u = cfg.get_double("u", 0.0);
    p.drive_f = cfg.get_double("f", 0.0);
    p.gamma = cfg.get_double("gamma", 1.0);
    if (cfg.has("n_th") && cfg.has("t_over_t0")) {
        throw ConfigError("give either n_th or t_over_t0, not both");
    }
    if (cfg.has("t_over_t0")) {
        p.n_th = thermal_occupancy(Temperature{cfg.get_double("t_over_t0")});
    } else {
        p.n_th = cfg.get_double("n_th", 0.0);
    }
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return p;
}

FockBasis basis_from(const Config& cfg) {
    const int n1 = cfg.get_int("n1_max", 10);
    const int n2 = cfg.get_int("n2_max", 10);
    if (n1 < 1 || n2 < 1) {
        throw ConfigError("n1_max and n2_max must be at least 1");
    }
    return FockBasis(n1, n2);
}

AxisSpec axis_from(const Config& cfg, const std::string& prefix) {
    AxisSpec axis;
    axis.param = cfg.get_string(prefix + "_param");
    axis.min = cfg.get_double(prefix + "_min");
    axis.max = cfg.get_double(prefix + "_max");
    axis.n_points = cfg.get_int(prefix + "_points");
    const std::string spacing = cfg.get_string(prefix + "_spacing", "linear");
    if (spacing == "log") axis.log_spacing = true;
    else if (spacing != "linear") {
        throw ConfigError(prefix + "_spacing must be 'linear' or 'log'");
    }
    SystemParams probe;
    set_param(probe, axis.param, axis.min);  // validates the name
    return axis;
}

SweepSpec sweep_from(const Config& cfg) {
    SweepSpec spec;
    spec.axis1 = axis_from(cfg, "axis1");
    spec.axis2 = axis_from(cfg, "axis2");
    spec.fixed = system_params_from(cfg);
    const FockBasis basis = basis_from(cfg);
    spec.n1_max = basis.n1_max;
    spec.n2_max = basis.n2_max;
    return spec;
}

int worker_count_from_env() {
    if (const char* env = std::getenv("PBLOCK_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    workers = std::max(1, std::min(workers, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

SweepPoint evaluate_point(const SystemParams& params, const FockBasis& basis,
                          double axis1, double axis2) {
    SweepPoint point;
    point.axis1 = axis1;
    point.axis2 = axis2;
    point.truncation_warning = !truncation_adequate(params, basis);
    try {
        const Superoperator l = build_liouvillian(params, basis);
        const SteadyStateReport rep = steady_state(l);
        point.residual = rep.residual;
        point.mean_phonon = mean_phonon(rep.rho, Mode::one);
        point.g2 = g2_zero(rep.rho, Mode::one);
    } catch (const VacuumDenominator&) {
        point.error = "VacuumDenominator";
    } catch (const NonPositive&) {
        point.error = "NonPositive";
    } catch (const NoSteadyState&) {
        point.error = "NoSteadyState";
    } catch (const IntegrationFailure&) {
        point.error = "IntegrationFailure";
    } catch (const Error&) {
        point.error = "Error";
    }
    return point;
}

std::vector<SweepPoint> run_sweep(const SweepSpec& spec, int workers) {
    const std::vector<double> v1 = axis_values(spec.axis1);
    const std::vector<double> v2 = axis_values(spec.axis2);
    const FockBasis basis(spec.n1_max, spec.n2_max);
    const int total = static_cast<int>(v1.size() * v2.size());

    std::vector<SweepPoint> points(static_cast<size_t>(total));
    parallel_for(total, workers, [&](int idx) {
        const size_t i1 = static_cast<size_t>(idx) / v2.size();
        const size_t i2 = static_cast<size_t>(idx) % v2.size();
        SystemParams p = spec.fixed;
        set_param(p, spec.axis1.param, v1[i1]);
        set_param(p, spec.axis2.param, v2[i2]);
        points[static_cast<size_t>(idx)] = evaluate_point(p, basis, v1[i1], v2[i2]);
    });
    return points;
}

} // namespace pblock
