// lindblad.hpp — Rotating-wave Hamiltonian and finite-temperature Liouvillian

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "pblock/fock.hpp"

namespace pblock {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

// Physical parameters in units of gamma (numerics set gamma = 1). Both modes
// share gamma and n_th; the model assumes symmetric resonators.
struct SystemParams {
    double delta = 0.0;       // detuning omega_0 - omega_d
    double coupling_j = 0.0;  // intermode coupling J >= 0
    double kerr_u = 0.0;      // Kerr nonlinearity U of mode 2
    double drive_f = 0.0;     // drive amplitude F >= 0 on mode 1
    double gamma = 1.0;       // decay rate > 0
    double n_th = 0.0;        // thermal occupancy >= 0

    void validate() const;  // throws std::invalid_argument
};

// Temperature in units of T0 = hbar*omega_0/k_B.
struct Temperature {
    double t_over_t0 = 0.0;
};

// Bose-Einstein occupancy n_th = 1/(exp(T0/T) - 1); exactly 0 at T = 0.
double thermal_occupancy(Temperature temp);

// Truncation-adequacy guard: thermal tails corrupt g2 once n_th exceeds
// about a tenth of the smaller mode cutoff.
bool truncation_adequate(const SystemParams& params, const FockBasis& basis);

// Liouvillian acting on column-stacked density matrices. `scale` holds the
// per-component graded equilibration weights used by the steady-state solver
// (an internal conditioning aid, not part of the operator itself).
struct Superoperator {
    FockBasis basis;
    SparseMatrix mat;  // dim^2 x dim^2
    Eigen::VectorXd scale;

    Matrix dense() const { return Matrix(mat); }
};

// H = Delta(n1 + n2) + J(b1' b2 + b2' b1) + F(b1' + b1) + U b2'^2 b2^2
Operator build_hamiltonian(const SystemParams& params, const FockBasis& basis);

// drho/dt = -i[H,rho] + sum_{n=1,2} (gamma/2)[(n_th+1) D[b_n] + n_th D[b_n']]
// with D[A]rho = 2 A rho A' - A'A rho - rho A'A, assembled term by term via
// vec(A rho B) = (B^T kron A) vec(rho) (column stacking).
Superoperator build_liouvillian(const SystemParams& params, const FockBasis& basis);

// Column-stacking vectorization and its inverse.
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, int dim);

} // namespace pblock
