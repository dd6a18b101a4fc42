#include "avar/pencil.hpp"

#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "avar/rng.hpp"

namespace avar {

Eigen::SparseMatrix<double> discrete_operator_matrix(const Operator& op,
                                                     const VoxelDomain& domain) {
  const int n = domain.cell_count();
  const double h = domain.spacing();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n) * op.d * op.k * op.N * 2);

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < op.d; ++j) {
      const int p = domain.neighbor(i, j, +1);
      const int m = domain.neighbor(i, j, -1);
      // (cell, weight) pairs of the difference stencil for axis j at cell i.
      std::vector<std::pair<int, double>> stencil;
      if (p >= 0 && m >= 0) {
        stencil = {{p, 1.0 / (2.0 * h)}, {m, -1.0 / (2.0 * h)}};
      } else if (p >= 0) {
        stencil = {{p, 1.0 / h}, {i, -1.0 / h}};
      } else if (m >= 0) {
        stencil = {{i, 1.0 / h}, {m, -1.0 / h}};
      }
      for (const auto& [cell, w] : stencil) {
        for (int r = 0; r < op.k; ++r) {
          for (int c = 0; c < op.N; ++c) {
            const double a = op.matrices[j](r, c);
            if (a != 0.0) trip.emplace_back(i * op.k + r, cell * op.N + c, w * a);
          }
        }
      }
    }
  }
  Eigen::SparseMatrix<double> A(n * op.k, n * op.N);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  return A;
}

PoincarePencil assemble_poincare_pencil(const Operator& op, const VoxelDomain& domain) {
  PoincarePencil pencil;
  pencil.ncells = domain.cell_count();
  pencil.ncomp = op.N;
  pencil.mass_weight = domain.cell_volume();
  const Eigen::SparseMatrix<double> A = discrete_operator_matrix(op, domain);
  pencil.L = pencil.mass_weight * Eigen::SparseMatrix<double>(A.transpose() * A);
  pencil.L.makeCompressed();
  return pencil;
}

namespace {

// Modified Gram-Schmidt; drops columns that lose all their length.
Eigen::MatrixXd orthonormalize_columns(const Eigen::MatrixXd& V) {
  Eigen::MatrixXd Q(V.rows(), V.cols());
  int kept = 0;
  for (int j = 0; j < V.cols(); ++j) {
    Eigen::VectorXd v = V.col(j);
    const double original = v.norm();
    for (int i = 0; i < kept; ++i) v -= Q.col(i) * Q.col(i).dot(v);
    // Re-orthogonalize once; classical enough for nearly dependent blocks.
    for (int i = 0; i < kept; ++i) v -= Q.col(i) * Q.col(i).dot(v);
    const double vn = v.norm();
    if (vn > 1e-12 * std::max(original, 1.0)) Q.col(kept++) = v / vn;
  }
  Q.conservativeResize(Eigen::NoChange, kept);
  return Q;
}

}  // namespace

ConstrainedEigenResult smallest_constrained_eigenpair(
    const Eigen::SparseMatrix<double>& L, double mass_weight,
    const Eigen::MatrixXd& constraints, std::uint64_t seed, double tol,
    int max_iterations) {
  const int n = static_cast<int>(L.rows());
  if (mass_weight <= 0) throw std::invalid_argument("eigenpair: mass weight > 0");

  // Row-orthonormalized constraints.
  Eigen::MatrixXd Q(constraints.rows(), n);
  int l = 0;
  for (int i = 0; i < constraints.rows(); ++i) {
    Eigen::VectorXd row = constraints.row(i).transpose();
    const double original = row.norm();
    for (int j = 0; j < l; ++j) row -= Q.row(j).transpose() * Q.row(j).dot(row.transpose());
    if (row.norm() <= 1e-12 * std::max(original, 1.0))
      throw std::invalid_argument(
          "eigenpair: constraint functionals are linearly dependent (degenerate "
          "projection support)");
    Q.row(l++) = row.transpose() / row.norm();
  }
  Q.conservativeResize(l, Eigen::NoChange);

  auto project_out = [&](Eigen::MatrixXd& X) {
    if (l > 0) X -= Q.transpose() * (Q * X);
  };

  // Preconditioner H = L + M (SPD). Constrained solves use the Schur
  // complement on the constraint rows, so solutions stay in ker Q exactly.
  Eigen::SparseMatrix<double> H = L;
  for (int i = 0; i < n; ++i) H.coeffRef(i, i) += mass_weight;
  H.makeCompressed();
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(H);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("eigenpair: preconditioner factorization failed");

  Eigen::MatrixXd Y(n, l);
  for (int j = 0; j < l; ++j) Y.col(j) = ldlt.solve(Q.row(j).transpose());
  Eigen::PartialPivLU<Eigen::MatrixXd> schur;
  if (l > 0) schur.compute(Q * Y);

  auto constrained_solve = [&](const Eigen::MatrixXd& B) {
    Eigen::MatrixXd Z = ldlt.solve(B);
    if (l > 0) Z -= Y * schur.solve(Q * Z);
    return Z;
  };

  const int block = std::max(1, std::min({8, n - l, std::max(4, l + 2)}));
  Rng rng(seed);
  Eigen::MatrixXd X(n, block);
  for (int j = 0; j < block; ++j) X.col(j) = rng.gaussian_vector(n);
  project_out(X);
  X = orthonormalize_columns(X);

  // Once the block converges, [X, W] turns numerically degenerate and the
  // normalized remainders feed rounding noise with large Rayleigh quotients
  // back into the Ritz step. Keep the best iterate and stop on stagnation.
  ConstrainedEigenResult result;
  double best_res = std::numeric_limits<double>::infinity();
  int since_improvement = 0;
  for (int it = 0; it < max_iterations; ++it) {
    const Eigen::MatrixXd W = constrained_solve(mass_weight * X);
    Eigen::MatrixXd V(n, X.cols() + W.cols());
    V << X, W;
    V = orthonormalize_columns(V);

    // Rayleigh-Ritz on span{X, W}.
    const Eigen::MatrixXd LV = L * V;
    const Eigen::MatrixXd Ar = V.transpose() * LV;
    const Eigen::MatrixXd Br = mass_weight * (V.transpose() * V);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(Ar, Br);
    const int take = std::min<int>(block, static_cast<int>(V.cols()));
    X = V * ges.eigenvectors().leftCols(take);

    const double theta = ges.eigenvalues()(0);
    Eigen::VectorXd x1 = X.col(0);
    Eigen::MatrixXd r = L * x1 - theta * mass_weight * x1;
    project_out(r);
    const double res = r.norm() / (mass_weight * x1.norm());
    if (res < best_res) {
      best_res = res;
      result.lambda = theta;
      result.vector = x1;
      since_improvement = 0;
    } else {
      ++since_improvement;
    }
    result.iterations = it + 1;
    if (best_res <= tol || since_improvement >= 8) break;
  }

  // Single-vector polish: residual corrections through the preconditioner
  // with a 2x2 Rayleigh-Ritz step. Each direction is built from the current
  // residual, so its noise content shrinks along with the residual.
  {
    Eigen::VectorXd x = result.vector;
    for (int it = 0; it < 40 && best_res > tol; ++it) {
      const Eigen::VectorXd Lx = L * x;
      const double theta = x.dot(Lx) / (mass_weight * x.squaredNorm());
      Eigen::MatrixXd r = Lx - theta * mass_weight * x;
      project_out(r);
      const double res = r.norm() / (mass_weight * x.norm());
      if (res < best_res) {
        best_res = res;
        result.lambda = theta;
        result.vector = x;
      }
      if (best_res <= tol) break;
      Eigen::MatrixXd d = constrained_solve(r);
      Eigen::MatrixXd V(n, 2);
      V << x / x.norm(), d;
      V = orthonormalize_columns(V);
      if (V.cols() < 2) break;
      const Eigen::MatrixXd Ar = V.transpose() * (L * V);
      const Eigen::MatrixXd Br = mass_weight * (V.transpose() * V);
      Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(Ar, Br);
      x = V * ges.eigenvectors().col(0);
      ++result.iterations;
    }
  }

  result.converged = best_res <= tol;
  result.residual = best_res;
  result.vector /= std::sqrt(mass_weight) * result.vector.norm();
  result.constraint_residual = l > 0 ? (Q * result.vector).norm() : 0.0;
  return result;
}

}  // namespace avar
