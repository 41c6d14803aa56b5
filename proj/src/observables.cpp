// observables.cpp — g2(0), delayed correlations via the regression theorem,
// phonon-number distributions, and the Poisson reference.

#include "pblock/observables.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pblock/errors.hpp"

namespace pblock {

namespace {

constexpr double kVacuumFloor = 1e-14;
constexpr double kImagTol = 1e-9;

double real_checked(Complex z, double tol, const char* what) {
    if (std::abs(z.imag()) > tol * std::max(1.0, std::abs(z.real()))) {
        throw Error(std::string(what) + ": imaginary residue " + std::to_string(z.imag()));
    }
    return z.real();
}

} // namespace

double mean_phonon(const DensityMatrix& rho, Mode mode) {
    const Matrix n = number_operator(rho.basis, mode).mat;
    return real_checked((n * rho.mat).trace(), 1e-10, "mean_phonon");
}

double g2_zero(const DensityMatrix& rho, Mode mode) {
    const Matrix b = annihilation(rho.basis, mode).mat;
    const Matrix bd = b.adjoint();
    const double den = real_checked((bd * b * rho.mat).trace(), 1e-10, "g2_zero");
    if (den <= kVacuumFloor) {
        throw VacuumDenominator("g2_zero: mean occupation " + std::to_string(den));
    }
    const double num = real_checked((bd * bd * b * b * rho.mat).trace(), 1e-10, "g2_zero");
    return num / (den * den);
}

CorrelationSeries g2_tau(const Superoperator& liouvillian, const DensityMatrix& rho_ss,
                         Mode mode, std::vector<double> taus) {
    if (rho_ss.basis.dim != liouvillian.basis.dim) {
        throw std::invalid_argument("g2_tau: dimension mismatch");
    }
    for (size_t i = 0; i < taus.size(); ++i) {
        if (taus[i] < 0.0 || (i > 0 && taus[i] < taus[i - 1])) {
            throw std::invalid_argument("g2_tau: taus must be sorted and non-negative");
        }
    }
    const Matrix b = annihilation(rho_ss.basis, mode).mat;
    const Matrix num_op = number_operator(rho_ss.basis, mode).mat;
    const double nbar = real_checked((num_op * rho_ss.mat).trace(), 1e-10, "g2_tau");
    if (nbar <= kVacuumFloor) {
        throw VacuumDenominator("g2_tau: mean occupation " + std::to_string(nbar));
    }

    // Regression seed b rho b'. Its trace equals nbar; the constant factor is
    // divided out before integrating (pure bookkeeping, the seed itself is
    // propagated without any per-sample renormalization).
    const Matrix seed = b * rho_ss.mat * b.adjoint();
    const Vector v0 = vec(seed) / nbar;
    const std::vector<Vector> states = propagate_vec(liouvillian, v0, taus);

    CorrelationSeries series;
    series.taus = std::move(taus);
    series.mean_occupation = nbar;
    series.values.reserve(states.size());
    for (const Vector& v : states) {
        const Matrix x = unvec(v, rho_ss.basis.dim);
        const double g = real_checked((num_op * x).trace(), kImagTol, "g2_tau");
        series.values.push_back(g / nbar);
    }
    return series;
}

PhononDistribution phonon_distribution(const DensityMatrix& rho, Mode mode) {
    const int levels = rho.basis.levels(mode);
    PhononDistribution dist;
    dist.probabilities.assign(static_cast<size_t>(levels), 0.0);
    for (int idx = 0; idx < rho.basis.dim; ++idx) {
        auto [m, n] = rho.basis.unindex(idx);
        const int occ = (mode == Mode::one) ? m : n;
        dist.probabilities[static_cast<size_t>(occ)] += rho.mat(idx, idx).real();
    }
    double sum = 0.0;
    dist.mean = 0.0;
    for (int m = 0; m < levels; ++m) {
        const double p = dist.probabilities[static_cast<size_t>(m)];
        if (p < -1e-9 || p > 1.0 + 1e-9) {
            throw Error("phonon_distribution: probability out of range " + std::to_string(p));
        }
        sum += p;
        dist.mean += m * p;
    }
    if (std::abs(sum - 1.0) > 1e-8) {
        throw Error("phonon_distribution: probabilities sum to " + std::to_string(sum));
    }
    dist.truncation_deficit = 1.0 - sum;
    return dist;
}

TauFit fit_oscillation(const CorrelationSeries& series) {
    const auto& v = series.values;
    const auto& t = series.taus;
    TauFit fit{std::nan(""), std::nan(""), 0};
    if (v.size() < 4) return fit;

    for (size_t i = 1; i + 1 < v.size(); ++i) {
        if (v[i] > v[i - 1] && v[i] > v[i + 1]) ++fit.n_peaks;
    }

    // Period from the autocorrelation fundamental. The series generally mixes
    // the J line with its 2J harmonic; the tallest autocorrelation peak sits
    // at the fundamental repeat, which raw peak spacing would not recover.
    const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    bool uniform = true;
    for (size_t i = 1; i < t.size(); ++i) {
        if (std::abs(t[i] - t[i - 1] - dt) > 1e-6 * dt) uniform = false;
    }
    if (uniform) {
        const size_t n = v.size();
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(n);
        const size_t max_lag = n / 2;
        std::vector<double> acf(max_lag + 1, 0.0);
        for (size_t lag = 0; lag <= max_lag; ++lag) {
            double r = 0.0;
            for (size_t k = 0; k + lag < n; ++k) {
                r += (v[k] - mean) * (v[k + lag] - mean);
            }
            acf[lag] = r / static_cast<double>(n - lag);
        }
        size_t best = 0;
        double best_val = 0.0;
        bool dipped = false;
        for (size_t lag = 1; lag + 1 <= max_lag; ++lag) {
            if (acf[lag] < 0.0) dipped = true;
            if (dipped && acf[lag] > acf[lag - 1] && acf[lag] >= acf[lag + 1] &&
                acf[lag] > best_val) {
                best = lag;
                best_val = acf[lag];
            }
        }
        if (best > 0 && best < max_lag) {
            const double d1 = acf[best] - acf[best - 1];
            const double d2 = acf[best] - acf[best + 1];
            fit.period = (static_cast<double>(best) + 0.5 * (d1 - d2) / (d1 + d2)) * dt;
        }
    }

    if (v.front() >= 1.0) {
        fit.window = 0.0;
    } else {
        for (size_t i = 0; i + 1 < v.size(); ++i) {
            if (v[i] < 1.0 && v[i + 1] >= 1.0) {
                const double frac = (1.0 - v[i]) / (v[i + 1] - v[i]);
                fit.window = 2.0 * (t[i] + frac * (t[i + 1] - t[i]));
                break;
            }
        }
    }
    return fit;
}

PhononDistribution poisson_reference(double mean, int m_max) {
    if (mean < 0.0) throw std::invalid_argument("poisson_reference: mean must be non-negative");
    if (m_max < 0) throw std::invalid_argument("poisson_reference: m_max must be non-negative");
    PhononDistribution dist;
    dist.probabilities.reserve(static_cast<size_t>(m_max) + 1);
    double p = std::exp(-mean);
    double sum = 0.0;
    dist.mean = mean;
    for (int m = 0; m <= m_max; ++m) {
        dist.probabilities.push_back(p);
        sum += p;
        p *= mean / (m + 1);
    }
    dist.truncation_deficit = 1.0 - sum;
    return dist;
}

} // namespace pblock
