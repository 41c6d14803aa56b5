// solver.hpp — Steady states of the Liouvillian and time propagation

#pragma once

#include <span>
#include <vector>

#include "pblock/lindblad.hpp"

namespace pblock {

enum class SteadyMethod { trace_replacement, smallest_eigenpair };

struct SteadyStateReport {
    DensityMatrix rho;
    double residual;             // ||L vec(rho)||_2 after cleanup
    SteadyMethod method;
    double hermitization_delta;  // Frobenius norm of the removed anti-Hermitian part
    double trace_correction;     // |tr - 1| before renormalization
    double min_eigenvalue;       // smallest eigenvalue of the returned rho
};

// Solve L vec(rho) = 0, tr rho = 1. Primary method replaces the row of
// largest diagonal magnitude with the trace functional and solves the sparse
// linear system; on failure falls back to the smallest-magnitude eigenpair
// (shift-inverted power iteration). Throws NoSteadyState / NonPositive.
SteadyStateReport steady_state(const Superoperator& liouvillian);
SteadyStateReport steady_state(const Superoperator& liouvillian, SteadyMethod method);

double residual(const Superoperator& liouvillian, const DensityMatrix& rho);

struct PropagationSample {
    double time;
    DensityMatrix rho;
    double hermitization_delta;
    double trace_correction;
};

// Integrate dvec(rho)/dt = L vec(rho) with an adaptive Dormand-Prince 5(4)
// pair (rtol 1e-9, atol 1e-11), sampling at n_samples uniformly spaced times
// ending at t_final. Samples are Hermitized and trace-renormalized with the
// corrections recorded. Throws IntegrationFailure on step underflow.
std::vector<PropagationSample> propagate(const Superoperator& liouvillian,
                                         const DensityMatrix& rho0,
                                         double t_final, int n_samples);

// Raw linear propagation used by the regression-theorem path: no
// Hermitization, no renormalization. `times` must be sorted and >= 0.
std::vector<Vector> propagate_vec(const Superoperator& liouvillian,
                                  const Vector& v0, std::span<const double> times);

} // namespace pblock
