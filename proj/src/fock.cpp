// fock.cpp — Basis indexing, ladder operators, density-matrix validation

#include "pblock/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace pblock {

FockBasis::FockBasis(int n1, int n2) : n1_max(n1), n2_max(n2), dim((n1 + 1) * (n2 + 1)) {
    if (n1 < 1 || n2 < 1) {
        throw std::invalid_argument("FockBasis: truncation must be at least 1 per mode");
    }
}

int FockBasis::index(int m, int n) const {
    if (m < 0 || m > n1_max || n < 0 || n > n2_max) {
        throw std::out_of_range("FockBasis::index: occupation out of range");
    }
    return m * (n2_max + 1) + n;
}

std::pair<int, int> FockBasis::unindex(int idx) const {
    if (idx < 0 || idx >= dim) {
        throw std::out_of_range("FockBasis::unindex: index out of range");
    }
    return {idx / (n2_max + 1), idx % (n2_max + 1)};
}

FockBasis make_basis(int n1_max, int n2_max) {
    return FockBasis(n1_max, n2_max);
}

namespace {

// Single-mode lowering matrix a_{n-1,n} = sqrt(n) on levels levels
Matrix lowering(int levels) {
    Matrix a = Matrix::Zero(levels, levels);
    for (int n = 1; n < levels; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return k;
}

} // namespace

Operator annihilation(const FockBasis& basis, Mode mode) {
    const int l1 = basis.levels(Mode::one);
    const int l2 = basis.levels(Mode::two);
    if (mode == Mode::one) {
        return {basis, kron(lowering(l1), Matrix::Identity(l2, l2))};
    }
    return {basis, kron(Matrix::Identity(l1, l1), lowering(l2))};
}

Operator creation(const FockBasis& basis, Mode mode) {
    Operator op = annihilation(basis, mode);
    op.mat = op.mat.adjoint().eval();
    return op;
}

Operator number_operator(const FockBasis& basis, Mode mode) {
    Matrix n = Matrix::Zero(basis.dim, basis.dim);
    for (int idx = 0; idx < basis.dim; ++idx) {
        auto [m, k] = basis.unindex(idx);
        n(idx, idx) = static_cast<double>(mode == Mode::one ? m : k);
    }
    return {basis, std::move(n)};
}

Operator identity_operator(const FockBasis& basis) {
    return {basis, Matrix::Identity(basis.dim, basis.dim)};
}

DensityMatrix vacuum_density(const FockBasis& basis) {
    Matrix rho = Matrix::Zero(basis.dim, basis.dim);
    rho(0, 0) = 1.0;
    return {basis, std::move(rho)};
}

double hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double smallest_eigenvalue(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()),
                                             Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void validate_density(const DensityMatrix& rho) {
    if (rho.mat.rows() != rho.basis.dim || rho.mat.cols() != rho.basis.dim) {
        throw std::invalid_argument("validate_density: dimension mismatch");
    }
    const double herm = hermiticity_defect(rho.mat);
    if (herm > 1e-10) {
        throw std::invalid_argument("validate_density: Hermiticity defect " +
                                    std::to_string(herm));
    }
    const double tr = std::abs(rho.mat.trace().real() - 1.0);
    if (tr > 1e-10 || std::abs(rho.mat.trace().imag()) > 1e-10) {
        throw std::invalid_argument("validate_density: trace defect " + std::to_string(tr));
    }
    const double lo = smallest_eigenvalue(rho.mat);
    if (lo < -1e-8) {
        throw std::invalid_argument("validate_density: negative eigenvalue " +
                                    std::to_string(lo));
    }
}

DensityMatrix density_from_matrix(const FockBasis& basis, Matrix m) {
    DensityMatrix rho{basis, std::move(m)};
    validate_density(rho);
    return rho;
}

} // namespace pblock
