#pragma once

#include <cstdint>

#include <Eigen/Sparse>

#include "avar/operator.hpp"
#include "avar/voxel.hpp"

namespace avar {

// Sparse matrix of the discrete operator: maps cell dofs (cell-major, N
// components per cell) to image dofs (k components per cell), with the same
// central/one-sided stencil as apply_discrete.
Eigen::SparseMatrix<double> discrete_operator_matrix(const Operator& op,
                                                     const VoxelDomain& domain);

// The stiffness/mass pair of the discrete Rayleigh quotient
// ||A_h u||^2_{L^2} / ||u||^2_{L^2}: L = h^d A_h^T A_h and M = h^d I.
struct PoincarePencil {
  Eigen::SparseMatrix<double> L;
  double mass_weight = 0.0;  // M = mass_weight * identity
  int ncells = 0;
  int ncomp = 0;
};

PoincarePencil assemble_poincare_pencil(const Operator& op, const VoxelDomain& domain);

struct ConstrainedEigenResult {
  double lambda = 0.0;
  Eigen::VectorXd vector;  // M-normalized, constraints satisfied
  double residual = 0.0;   // ||P(L x - lambda M x)|| / ||M x||, P = projector onto ker C
  double constraint_residual = 0.0;  // ||C x|| with row-orthonormalized C
  int iterations = 0;
  bool converged = false;
};

// Smallest eigenvalue of L u = lambda M u on the subspace { C u = 0 }.
// Constraint rows are orthonormalized and eliminated by orthogonal
// projection; the solve is block inverse iteration with Rayleigh-Ritz
// acceleration over span{X, (L + M)^{-1} M X}, the preconditioner applied
// through a Schur complement on the constraints so every iterate stays in
// ker C exactly. Deterministic for a fixed seed. tol bounds the projected
// residual ||P(L x - lambda M x)|| / ||M x||.
ConstrainedEigenResult smallest_constrained_eigenpair(
    const Eigen::SparseMatrix<double>& L, double mass_weight,
    const Eigen::MatrixXd& constraints, std::uint64_t seed,
    double tol = 5e-9, int max_iterations = 400);

}  // namespace avar
