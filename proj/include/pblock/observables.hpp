// observables.hpp — Correlation functions and phonon statistics

#pragma once

#include <vector>

#include "pblock/solver.hpp"

namespace pblock {

// g2(0) = Tr(b'b'bb rho) / Tr(b'b rho)^2. Throws VacuumDenominator when the
// mean occupation is at the vacuum floor (<= 1e-14).
double g2_zero(const DensityMatrix& rho, Mode mode);

double mean_phonon(const DensityMatrix& rho, Mode mode);

struct CorrelationSeries {
    std::vector<double> taus;    // delay times, units 1/gamma
    std::vector<double> values;  // g2(tau)
    double mean_occupation;      // <b'b> at the steady state
};

// Quantum regression theorem: propagate the seeded matrix b rho_ss b' under L
// and trace against the number operator, normalized by Tr(b'b rho_ss)^2.
// The tau = 0 value matches g2_zero by construction.
CorrelationSeries g2_tau(const Superoperator& liouvillian, const DensityMatrix& rho_ss,
                         Mode mode, std::vector<double> taus);

struct PhononDistribution {
    std::vector<double> probabilities;  // P_m, m = 0..m_max
    double mean;
    double truncation_deficit;  // probability mass beyond the truncated support
};

// Marginal occupation-number distribution P_m = sum_n rho_{mn,mn}.
PhononDistribution phonon_distribution(const DensityMatrix& rho, Mode mode);

// Poisson weights of a coherent state with the given mean, truncated at m_max
// and deliberately left unnormalized; the missing mass is reported.
PhononDistribution poisson_reference(double mean, int m_max);

struct TauFit {
    double period;  // mean spacing of successive g2(tau) maxima; nan below 2 peaks
    double window;  // width of the antibunched (g2 < 1) interval around tau = 0;
                    // 0 when g2(0) >= 1, nan when g2 never crosses 1
    int n_peaks;
};

// Oscillation diagnostics of a sampled correlation series; peak positions are
// refined by quadratic interpolation.
TauFit fit_oscillation(const CorrelationSeries& series);

} // namespace pblock
