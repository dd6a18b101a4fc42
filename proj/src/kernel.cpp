#include "avar/kernel.hpp"

#include <map>
#include <stdexcept>

#include <Eigen/SVD>

namespace avar {

namespace {

// Nullspace basis (columns) at a fixed degree cap, in the coefficient basis
// x^alpha / alpha!. In that basis differentiation is coefficient shifting
// with unit weight, which keeps the system well scaled.
Eigen::MatrixXd nullspace_at_degree(const Operator& op, int degree,
                                    const std::vector<std::vector<int>>& cols_idx) {
  const int ncols = static_cast<int>(cols_idx.size()) * op.N;
  if (degree == 0) return Eigen::MatrixXd::Identity(ncols, ncols);

  const auto rows_idx = multi_indices_up_to(op.d, degree - 1);
  std::map<std::vector<int>, int> row_of;
  for (int i = 0; i < static_cast<int>(rows_idx.size()); ++i) row_of[rows_idx[i]] = i;

  const int nrows = static_cast<int>(rows_idx.size()) * op.k;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(nrows, ncols);
  for (int ci = 0; ci < static_cast<int>(cols_idx.size()); ++ci) {
    const auto& alpha = cols_idx[ci];
    for (int comp = 0; comp < op.N; ++comp) {
      const int col = ci * op.N + comp;
      for (int j = 0; j < op.d; ++j) {
        if (alpha[j] == 0) continue;
        std::vector<int> beta = alpha;
        beta[j] -= 1;
        const int ri = row_of.at(beta);
        for (int r = 0; r < op.k; ++r) {
          const double a = op.matrices[j](r, comp);
          if (a != 0.0) M(ri * op.k + r, col) += a;
        }
      }
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  while (rank < sv.size() && sv(rank) > 1e-10 * std::max(smax, 1.0)) ++rank;
  return svd.matrixV().rightCols(ncols - rank);
}

// Deterministic sign: largest-magnitude entry made positive.
void canonicalize_sign(Eigen::MatrixXd& basis) {
  for (int j = 0; j < basis.cols(); ++j) {
    int imax = 0;
    for (int i = 1; i < basis.rows(); ++i)
      if (std::abs(basis(i, j)) > std::abs(basis(imax, j))) imax = i;
    if (basis(imax, j) < 0) basis.col(j) *= -1.0;
  }
}

}  // namespace

KernelBasis kernel_basis(const Operator& op, int degree_cap) {
  if (degree_cap < 0) throw std::invalid_argument("kernel_basis: degree_cap >= 0");

  KernelBasis result;
  result.op = op;
  result.degree_cap = degree_cap;

  std::vector<int> dims;
  Eigen::MatrixXd basis;
  std::vector<std::vector<int>> cols_idx;
  int final_degree = 0;
  for (int m = 0; m <= degree_cap; ++m) {
    cols_idx = multi_indices_up_to(op.d, m);
    basis = nullspace_at_degree(op, m, cols_idx);
    dims.push_back(static_cast<int>(basis.cols()));
    final_degree = m;
    if (m >= 2 && dims[m] == dims[m - 1] && dims[m - 1] == dims[m - 2]) break;
  }
  result.degree_reached = final_degree;

  const int n = static_cast<int>(dims.size());
  result.stabilized = n >= 3 && dims[n - 1] == dims[n - 2] && dims[n - 2] == dims[n - 3];
  if (!result.stabilized)
    result.warning =
        "nullspace dimension still growing at the degree cap; "
        "operator is likely not C-elliptic";
  int stab = final_degree;
  while (stab > 0 && dims[stab - 1] == dims[final_degree]) --stab;
  result.stabilization_degree = stab;

  canonicalize_sign(basis);
  for (int j = 0; j < basis.cols(); ++j) {
    PolynomialVectorField p(op.d, op.N);
    for (int ci = 0; ci < static_cast<int>(cols_idx.size()); ++ci) {
      const double scale = 1.0 / factorial_of_multi_index(cols_idx[ci]);
      for (int comp = 0; comp < op.N; ++comp) {
        const double c = basis(ci * op.N + comp, j);
        if (std::abs(c) > 1e-14) p.add_term(cols_idx[ci], comp, c * scale);
      }
    }
    result.elements.push_back(std::move(p));
  }
  return result;
}

HyperplaneCounterexample hyperplane_counterexample(const Operator& op,
                                                   const EllipticityCertificate& cert) {
  if (cert.field != Field::Real)
    throw std::invalid_argument("hyperplane_counterexample: needs a real-field certificate");
  if (cert.elliptic || !cert.witness)
    throw std::invalid_argument(
        "hyperplane_counterexample: operator is R-elliptic, no counterexample exists");

  HyperplaneCounterexample ce;
  ce.normal = cert.witness->xi.real();
  ce.direction = cert.witness->v.real();
  ce.normal /= ce.normal.norm();
  ce.direction /= ce.direction.norm();
  ce.offset = 0.0;

  PolynomialVectorField f(op.d, op.N);
  for (int j = 0; j < op.d; ++j) {
    if (ce.normal(j) == 0.0) continue;
    std::vector<int> alpha(op.d, 0);
    alpha[j] = 1;
    for (int comp = 0; comp < op.N; ++comp) {
      const double c = ce.normal(j) * ce.direction(comp);
      if (c != 0.0) f.add_term(alpha, comp, c);
    }
  }
  ce.field = std::move(f);
  return ce;
}

}  // namespace avar
