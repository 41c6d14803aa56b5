// analytics.cpp — Closed-form weak-drive matrix elements, antibunching
// optima, regime boundaries, and beam feasibility estimates.

#include "pblock/analytics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pblock/errors.hpp"

namespace pblock {

namespace {

constexpr double kDegenerateFloor = 1e-14;

Complex dtilde(const SystemParams& p) {
    return {p.delta, -0.5 * p.gamma};
}

double sq(double x) { return x * x; }
double abs2(Complex z) { return std::norm(z); }

} // namespace

double rho66_zero_t(const SystemParams& params) {
    if (params.coupling_j <= 0.0) {
        throw std::invalid_argument("rho66_zero_t: requires J > 0");
    }
    const Complex dt = dtilde(params);
    const Complex dt2 = dt * dt;
    const double j2 = sq(params.coupling_j);
    const Complex denom_core = params.kerr_u + 2.0 * dt;
    if (std::abs(denom_core) <= kDegenerateFloor) {
        throw DegenerateDenominator("rho66_zero_t: |U + 2*dtilde| vanishes");
    }
    const Complex num_core = params.kerr_u * (j2 + 2.0 * dt2) + 2.0 * dt2 * dt;
    const double f4 = sq(sq(params.drive_f));
    const double j8 = sq(sq(j2));
    return f4 * abs2(num_core) / (2.0 * j8 * abs2(denom_core));
}

double rho44_finite_t(const SystemParams& params) {
    const Complex dt = dtilde(params);
    const Complex denom_core = sq(params.coupling_j) - dt * dt;
    if (std::abs(denom_core) <= kDegenerateFloor) {
        throw DegenerateDenominator("rho44_finite_t: |J^2 - dtilde^2| vanishes");
    }
    return sq(params.drive_f) * abs2(dt) / abs2(denom_core) + params.n_th;
}

double rho66_finite_t(const SystemParams& params) {
    const Complex dt = dtilde(params);
    const double j4 = sq(sq(params.coupling_j));
    const double thermal_mix = 2.0 * sq(params.drive_f) * abs2(dt) * params.n_th / j4;
    return rho66_zero_t(params) + thermal_mix + sq(params.n_th);
}

double g2_analytic(const SystemParams& params) {
    const double r44 = rho44_finite_t(params);
    if (r44 <= 0.0) {
        throw VacuumDenominator("g2_analytic: rho44 vanishes (undriven zero-T system)");
    }
    return 2.0 * rho66_finite_t(params) / sq(r44);
}

std::pair<double, double> antibunching_residuals(double delta, double u,
                                                 double j, double gamma) {
    const double g2 = sq(gamma);
    const double r1 = 2.0 * u * sq(j) + 4.0 * (delta + u) * sq(delta) - (3.0 * delta + u) * g2;
    const double r2 = 8.0 * u * delta + 12.0 * sq(delta) - g2;
    return {r1, r2};
}

namespace {

// Delta branch of 8 U Delta + 12 Delta^2 = gamma^2
double delta_branch(double u, double gamma, bool positive) {
    const double root = std::sqrt(64.0 * u * u + 48.0 * gamma * gamma);
    return positive ? (-8.0 * u + root) / 24.0 : (-8.0 * u - root) / 24.0;
}

} // namespace

OptimalPoint optimal_approx(double j, double gamma) {
    if (j <= 0.0 || gamma <= 0.0) {
        throw std::invalid_argument("optimal_approx: j and gamma must be positive");
    }
    const double s3 = std::sqrt(3.0);
    return {gamma / (2.0 * s3), 2.0 * gamma * gamma * gamma / (3.0 * s3 * j * j), false};
}

OptimalPoint optimal_exact(double j, double gamma, bool positive_branch) {
    if (j <= 0.0 || gamma <= 0.0) {
        throw std::invalid_argument("optimal_exact: j and gamma must be positive");
    }
    const double u_seed = optimal_approx(j, gamma).u_opt;
    auto f = [&](double u) {
        const double d = delta_branch(u, gamma, positive_branch);
        return antibunching_residuals(d, u, j, gamma).first;
    };
    double lo = u_seed / 10.0;
    double hi = u_seed * 10.0;
    double flo = f(lo);
    double fhi = f(hi);
    if (flo * fhi > 0.0) {
        throw NoRoot("optimal_exact: no sign change in [u_approx/10, u_approx*10]"
                     " (J too small for the strong-coupling branch)");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (flo * fm <= 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    const double u = 0.5 * (lo + hi);
    return {delta_branch(u, gamma, positive_branch), u, true};
}

RegimeBoundaries boundary_temperatures(const SystemParams& params) {
    if (params.drive_f <= 0.0) {
        throw UndrivenSystem("boundary_temperatures: no crossover exists at F = 0");
    }
    if (params.coupling_j <= 0.0) {
        throw std::invalid_argument("boundary_temperatures: requires J > 0");
    }
    const Complex dt = dtilde(params);
    const Complex dt2 = dt * dt;
    const double j2 = sq(params.coupling_j);
    const double j4 = sq(j2);
    const double f2 = sq(params.drive_f);

    const Complex interference = params.kerr_u * (j2 + 2.0 * dt2) + 2.0 * dt2 * dt;
    if (std::abs(interference) <= kDegenerateFloor) {
        throw DegenerateDenominator("boundary_temperatures: interference term vanishes"
                                    " (exact optimum has T1 = 0)");
    }
    const double t1 = 1.0 / std::log1p(4.0 * j4 * abs2(params.kerr_u * dt + 2.0 * dt2) /
                                       (f2 * abs2(interference)));
    const double t2 = 1.0 / std::log1p(j4 / (2.0 * f2 * abs2(dt)));
    return {t1, t2};
}

TemperatureRegime classify_regime(double t_over_t0, const RegimeBoundaries& b) {
    if (t_over_t0 < b.t1_over_t0) return TemperatureRegime::quantum;
    if (t_over_t0 < b.t2_over_t0) return TemperatureRegime::crossover;
    return TemperatureRegime::thermal;
}

double PhysicalEstimate::n_th_at(double temperature_k) const {
    if (temperature_k < 0.0) {
        throw std::invalid_argument("n_th_at: temperature must be non-negative");
    }
    return thermal_occupancy(Temperature{temperature_k / t0});
}

PhysicalEstimate physical_estimate(double width_d, double length_l,
                                   double youngs_e, double density_rho) {
    if (width_d <= 0.0 || length_l <= 0.0 || youngs_e <= 0.0 || density_rho <= 0.0) {
        throw std::invalid_argument("physical_estimate: all inputs must be positive");
    }
    const double f0 = width_d / sq(length_l) * std::sqrt(youngs_e / density_rho);
    const double omega0 = 2.0 * std::numbers::pi * f0;
    const double u = constants::hbar /
                     (1.6 * density_rho * sq(sq(width_d)) * length_l);
    const double t0 = constants::hbar * omega0 / constants::k_b;
    return {omega0, u, t0};
}

} // namespace pblock
