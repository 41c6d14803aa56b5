"""Steady states and phonon correlation statistics of two coupled mechanical
resonators under a finite-temperature Lindblad master equation."""

from pblock._core import (  # noqa: F401
    CorrelationSeries,
    DegenerateDenominator,
    DensityMatrix,
    FockBasis,
    IntegrationFailure,
    Mode,
    NonPositive,
    NoRoot,
    NoSteadyState,
    Operator,
    OptimalPoint,
    PhononDistribution,
    PhysicalEstimate,
    RegimeBoundaries,
    SteadyMethod,
    SteadyStateReport,
    Superoperator,
    SystemParams,
    UndrivenSystem,
    VacuumDenominator,
    __version__,
    annihilation,
    boundary_temperatures,
    build_hamiltonian,
    build_liouvillian,
    creation,
    density_from_matrix,
    fit_oscillation,
    g2_analytic,
    g2_tau,
    g2_zero,
    make_basis,
    mean_phonon,
    number_operator,
    optimal_approx,
    optimal_exact,
    phonon_distribution,
    physical_estimate,
    poisson_reference,
    propagate,
    residual,
    rho44_finite_t,
    rho66_finite_t,
    rho66_zero_t,
    steady_state,
    steady_state_with,
    thermal_occupancy,
    truncation_adequate,
    vacuum_density,
)
