// fock.hpp — Truncated two-mode Fock basis and elementary operators

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <utility>

namespace pblock {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Mode { one = 1, two = 2 };

// Number-state basis |m,n> with m <= n1_max, n <= n2_max. The flat index is
// row-major with mode 1 as the slow axis; this convention is fixed
// project-wide so vectorized quantities are reproducible.
struct FockBasis {
    int n1_max;
    int n2_max;
    int dim;

    FockBasis(int n1, int n2);

    int index(int m, int n) const;
    std::pair<int, int> unindex(int idx) const;
    int levels(Mode mode) const { return (mode == Mode::one ? n1_max : n2_max) + 1; }

    bool operator==(const FockBasis&) const = default;
};

FockBasis make_basis(int n1_max, int n2_max);

// Dense complex matrix acting on the truncated two-mode space.
struct Operator {
    FockBasis basis;
    Matrix mat;
};

// Hermitian, unit-trace, PSD (up to numerical noise) matrix on the same space.
struct DensityMatrix {
    FockBasis basis;
    Matrix mat;
};

Operator annihilation(const FockBasis& basis, Mode mode);
Operator creation(const FockBasis& basis, Mode mode);
Operator number_operator(const FockBasis& basis, Mode mode);
Operator identity_operator(const FockBasis& basis);

DensityMatrix vacuum_density(const FockBasis& basis);

// Invariant checks. validate_density throws std::invalid_argument when the
// matrix violates the DensityMatrix contract (Hermitian within 1e-10, unit
// trace within 1e-10, smallest eigenvalue >= -1e-8).
double hermiticity_defect(const Matrix& m);
double smallest_eigenvalue(const Matrix& m);
void validate_density(const DensityMatrix& rho);
DensityMatrix density_from_matrix(const FockBasis& basis, Matrix m);

} // namespace pblock
