// analytics.hpp — Closed-form weak-drive results: perturbative matrix
// elements, optimal antibunching conditions, regime boundaries, and the
// physical feasibility estimate. Serves as an independent oracle against the
// numerics.

#pragma once

#include "pblock/lindblad.hpp"

namespace pblock {

namespace constants {
// CODATA/SI exact values
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double k_b = 1.380649e-23;      // J/K
// Polycrystalline silicon, standard MEMS handbook values
inline constexpr double silicon_youngs_modulus = 160e9;  // Pa
inline constexpr double silicon_density = 2330.0;        // kg/m^3
}  // namespace constants

// Perturbative two-phonon element of mode 1 at T = 0:
// rho66 = F^4 |U(J^2 + 2 Dt^2) + 2 Dt^3|^2 / (2 J^8 |U + 2 Dt|^2),
// Dt = Delta - i gamma/2. Throws DegenerateDenominator.
double rho66_zero_t(const SystemParams& params);

// rho44 = F^2 |Dt|^2 / |J^2 - Dt^2|^2 + n_th
double rho44_finite_t(const SystemParams& params);

// rho66 = [zero-T term] + 2 F^2 |Dt|^2 n_th / J^4 + n_th^2
double rho66_finite_t(const SystemParams& params);

// Truncated-space correlation g2(0) ~= 2 rho66 / rho44^2. Exactly independent
// of F at n_th = 0 (the drive cancels). Throws VacuumDenominator at
// rho44 = 0.
double g2_analytic(const SystemParams& params);

struct OptimalPoint {
    double delta_opt;  // units gamma
    double u_opt;      // units gamma
    bool exact;        // root of the coupled conditions vs large-J closed form
};

// Solve the perfect-antibunching conditions
//   2 U J^2 + 4 (Delta + U) Delta^2 - (3 Delta + U) gamma^2 = 0
//   8 U Delta + 12 Delta^2 - gamma^2 = 0
// by eliminating Delta (positive branch by default) and bisecting in U.
// Throws NoRoot when the bracket has no sign change (J too small).
OptimalPoint optimal_exact(double j, double gamma, bool positive_branch = true);

// Large-J limits: Delta ~= gamma/(2 sqrt 3), U ~= 2 gamma^3/(3 sqrt 3 J^2).
OptimalPoint optimal_approx(double j, double gamma);

// Residuals of the two optimality conditions at (delta, u).
std::pair<double, double> antibunching_residuals(double delta, double u,
                                                 double j, double gamma);

struct RegimeBoundaries {
    double t1_over_t0;  // quantum -> crossover
    double t2_over_t0;  // crossover -> thermal
};

// T1 = T0/ln(1 + 4 J^4 |U Dt + 2 Dt^2|^2 / (F^2 |U(J^2+2Dt^2)+2Dt^3|^2)),
// T2 = T0/ln(1 + J^4 / (2 |F Dt|^2)). Throws UndrivenSystem at F = 0.
RegimeBoundaries boundary_temperatures(const SystemParams& params);

enum class TemperatureRegime { quantum, crossover, thermal };
TemperatureRegime classify_regime(double t_over_t0, const RegimeBoundaries& b);

// Doubly clamped beam estimates: omega0/2pi = d/L^2 sqrt(E/rho),
// U = hbar (1.6 rho d^4 L)^-1, T0 = hbar omega0 / k_B.
struct PhysicalEstimate {
    double omega0;      // rad/s
    double u_physical;  // Hz
    double t0;          // K

    double n_th_at(double temperature_k) const;
};

PhysicalEstimate physical_estimate(double width_d, double length_l,
                                   double youngs_e = constants::silicon_youngs_modulus,
                                   double density_rho = constants::silicon_density);

} // namespace pblock
