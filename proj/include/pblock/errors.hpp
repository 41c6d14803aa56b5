// errors.hpp — Exception types for solver and observable failure modes

#pragma once

#include <stdexcept>
#include <string>

namespace pblock {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// steady_state: residual above threshold after both solve methods
struct NoSteadyState : Error {
    using Error::Error;
};

// steady_state: smallest eigenvalue of rho below -1e-6 (truncation too small
// or pathological parameters)
struct NonPositive : Error {
    using Error::Error;
};

// propagate: adaptive step size underflowed
struct IntegrationFailure : Error {
    using Error::Error;
};

// g2 ratios: mean occupation at or below the vacuum floor
struct VacuumDenominator : Error {
    using Error::Error;
};

// closed-form matrix elements: |U + 2*dtilde| or |J^2 - dtilde^2| vanish
struct DegenerateDenominator : Error {
    using Error::Error;
};

// optimal_exact: bracket does not straddle a sign change
struct NoRoot : Error {
    using Error::Error;
};

// boundary_temperatures: F = 0 has no crossover
struct UndrivenSystem : Error {
    using Error::Error;
};

} // namespace pblock
