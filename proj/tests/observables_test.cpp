#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "pblock/analytics.hpp"
#include "pblock/errors.hpp"
#include "pblock/observables.hpp"

using namespace pblock;

namespace {

// |alpha> on mode 1, vacuum on mode 2, truncated and renormalized
DensityMatrix coherent_density(const FockBasis& basis, double alpha) {
    Vector ket = Vector::Zero(basis.dim);
    double amp = 1.0;
    for (int m = 0; m <= basis.n1_max; ++m) {
        if (m > 0) amp *= alpha / std::sqrt(static_cast<double>(m));
        ket[basis.index(m, 0)] = amp;
    }
    ket.normalize();
    return DensityMatrix{basis, ket * ket.adjoint()};
}

DensityMatrix thermal_mode1(const FockBasis& basis, double n_th) {
    const double r = n_th / (1.0 + n_th);
    double norm = 0.0;
    for (int m = 0; m <= basis.n1_max; ++m) norm += std::pow(r, m);
    Matrix rho = Matrix::Zero(basis.dim, basis.dim);
    for (int m = 0; m <= basis.n1_max; ++m) {
        rho(basis.index(m, 0), basis.index(m, 0)) = std::pow(r, m) / norm;
    }
    return DensityMatrix{basis, rho};
}

} // namespace

TEST_CASE("g2 of a coherent state is 1") {
    const FockBasis basis = make_basis(10, 10);
    const DensityMatrix rho = coherent_density(basis, std::sqrt(0.3));
    CHECK(g2_zero(rho, Mode::one) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("g2 of a thermal state is 2 up to the truncated tail") {
    const FockBasis basis = make_basis(10, 1);
    const DensityMatrix rho = thermal_mode1(basis, 0.5);
    // truncated-geometric oracle: moments summed over the kept levels
    const double r = 0.5 / 1.5;
    double norm = 0.0, m1 = 0.0, m2 = 0.0;
    for (int n = 0; n <= 10; ++n) {
        const double w = std::pow(r, n);
        norm += w;
        m1 += n * w;
        m2 += static_cast<double>(n) * (n - 1) * w;
    }
    const double oracle = (m2 / norm) / ((m1 / norm) * (m1 / norm));
    CHECK(g2_zero(rho, Mode::one) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(g2_zero(rho, Mode::one) == doctest::Approx(2.0).epsilon(1e-2));
}

TEST_CASE("g2 of a Fock state is (n-1)/n") {
    const FockBasis basis = make_basis(5, 2);
    for (int n = 1; n <= 4; ++n) {
        Matrix m = Matrix::Zero(basis.dim, basis.dim);
        m(basis.index(n, 0), basis.index(n, 0)) = 1.0;
        const DensityMatrix rho{basis, m};
        CHECK(g2_zero(rho, Mode::one) ==
              doctest::Approx(static_cast<double>(n - 1) / n).epsilon(1e-12));
    }
}

TEST_CASE("g2 rejects the vacuum") {
    const FockBasis basis = make_basis(3, 3);
    CHECK_THROWS_AS(g2_zero(vacuum_density(basis), Mode::one), VacuumDenominator);
    CHECK_THROWS_AS(g2_zero(vacuum_density(basis), Mode::two), VacuumDenominator);
}

TEST_CASE("mean phonon numbers") {
    const FockBasis basis = make_basis(10, 3);
    CHECK(mean_phonon(vacuum_density(basis), Mode::one) == 0.0);

    // thermal mean reproduces n_th once the cutoff is generous
    const FockBasis wide = make_basis(16, 1);
    const DensityMatrix th = thermal_mode1(wide, 0.5);
    CHECK(std::abs(mean_phonon(th, Mode::one) - 0.5) < 1e-6);

    // weak drive: mean of mode 1 approaches the closed form F^2|Dt|^2/|J^2-Dt^2|^2
    SystemParams p{0.2885, 20.0, 0.00096, 0.01, 1.0, 0.0};
    const SteadyStateReport rep = steady_state(build_liouvillian(p, make_basis(6, 6)));
    const double expect = rho44_finite_t(p);
    CHECK(std::abs(mean_phonon(rep.rho, Mode::one) - expect) / expect < 0.01);
}

TEST_CASE("phonon distribution marginals") {
    const FockBasis basis = make_basis(4, 4);

    SUBCASE("vacuum") {
        const PhononDistribution d = phonon_distribution(vacuum_density(basis), Mode::one);
        CHECK(d.probabilities[0] == 1.0);
        CHECK(d.mean == 0.0);
    }

    SUBCASE("product state marginals equal the single-mode distributions") {
        // rho = coherent(mode1) x vacuum: marginal over mode 2 is exact
        const DensityMatrix rho = coherent_density(basis, 0.6);
        const PhononDistribution d1 = phonon_distribution(rho, Mode::one);
        double sum = 0.0;
        for (double p : d1.probabilities) sum += p;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
        const PhononDistribution d2 = phonon_distribution(rho, Mode::two);
        CHECK(d2.probabilities[0] == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("random mixed state sums to one") {
        SystemParams p{0.3, 1.0, 0.05, 0.4, 1.0, 0.2};
        const SteadyStateReport rep = steady_state(build_liouvillian(p, basis));
        const PhononDistribution d = phonon_distribution(rep.rho, Mode::one);
        double sum = 0.0;
        for (double q : d.probabilities) sum += q;
        CHECK(std::abs(sum - 1.0) < 1e-8);
    }
}

TEST_CASE("poisson reference") {
    const PhononDistribution zero = poisson_reference(0.0, 5);
    CHECK(zero.probabilities[0] == 1.0);
    CHECK(zero.probabilities[1] == 0.0);

    const PhononDistribution one = poisson_reference(1.0, 6);
    CHECK(one.probabilities[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(one.probabilities[1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));

    const PhononDistribution small = poisson_reference(0.1, 4);
    CHECK(small.probabilities[2] / small.probabilities[1] == doctest::Approx(0.05));

    // unnormalized on purpose; deficit reported
    const PhononDistribution trunc = poisson_reference(3.0, 2);
    double sum = 0.0;
    for (double p : trunc.probabilities) sum += p;
    CHECK(trunc.truncation_deficit == doctest::Approx(1.0 - sum));
    CHECK(trunc.truncation_deficit > 0.5);
}

TEST_CASE("regression path matches the direct value at tau = 0") {
    const FockBasis basis = make_basis(6, 6);
    SystemParams p{0.2885, 20.0, 0.00096, 0.01, 1.0, 0.0};
    const Superoperator l = build_liouvillian(p, basis);
    const SteadyStateReport rep = steady_state(l);
    const CorrelationSeries s = g2_tau(l, rep.rho, Mode::one, {0.0, 0.01});
    const double direct = g2_zero(rep.rho, Mode::one);
    CHECK(std::abs(s.values[0] - direct) < 1e-8);
    CHECK(s.mean_occupation == doctest::Approx(mean_phonon(rep.rho, Mode::one)));
    // continuity just off zero delay
    CHECK(s.values[1] == doctest::Approx(direct).epsilon(0.3));
}

TEST_CASE("correlations factorize at long delay") {
    const FockBasis basis = make_basis(6, 6);
    SystemParams p{0.288, 20.0, 0.00096, 0.01, 1.0, 0.0};
    const Superoperator l = build_liouvillian(p, basis);
    const SteadyStateReport rep = steady_state(l);
    const CorrelationSeries s = g2_tau(l, rep.rho, Mode::one, {0.0, 20.0});
    CHECK(std::abs(s.values[1] - 1.0) < 1e-2);
}

TEST_CASE("g2_tau input validation") {
    const FockBasis basis = make_basis(3, 3);
    SystemParams p{0.3, 1.0, 0.0, 0.2, 1.0, 0.0};
    const Superoperator l = build_liouvillian(p, basis);
    const SteadyStateReport rep = steady_state(l);
    CHECK_THROWS_AS(g2_tau(l, rep.rho, Mode::one, {0.5, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(g2_tau(l, rep.rho, Mode::one, {-0.1, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(g2_tau(l, vacuum_density(basis), Mode::one, {0.0}), VacuumDenominator);
}

TEST_CASE("oscillation fit on a synthetic two-line signal") {
    // fundamental at period 1 with a strong second harmonic
    CorrelationSeries s;
    const double dt = 0.02;
    for (int i = 0; i <= 400; ++i) {
        const double t = i * dt;
        s.taus.push_back(t);
        s.values.push_back(1.0 + 0.4 * std::cos(2 * std::numbers::pi * t) +
                           0.6 * std::cos(4 * std::numbers::pi * t));
    }
    const TauFit fit = fit_oscillation(s);
    CHECK(fit.period == doctest::Approx(1.0).epsilon(0.01));

    // antibunched start: window is twice the first crossing of 1
    CorrelationSeries w;
    for (int i = 0; i <= 100; ++i) {
        const double t = i * 0.01;
        w.taus.push_back(t);
        w.values.push_back(2.0 * t);  // crosses 1 at t = 0.5
    }
    CHECK(fit_oscillation(w).window == doctest::Approx(1.0).epsilon(1e-6));

    // thermal start: no window
    CorrelationSeries th;
    for (int i = 0; i <= 10; ++i) {
        th.taus.push_back(i * 0.1);
        th.values.push_back(2.0 - 0.05 * i);
    }
    CHECK(fit_oscillation(th).window == 0.0);
}
