#include "avar/operator.hpp"

#include <stdexcept>

namespace avar {

Operator::Operator(std::vector<Eigen::MatrixXd> mats, std::string label)
    : matrices(std::move(mats)), name(std::move(label)) {
  if (matrices.empty()) throw std::invalid_argument("operator needs at least one matrix");
  d = static_cast<int>(matrices.size());
  k = static_cast<int>(matrices.front().rows());
  N = static_cast<int>(matrices.front().cols());
  if (N < 1 || k < 1) throw std::invalid_argument("operator matrices must be nonempty");
  for (const auto& m : matrices) {
    if (m.rows() != k || m.cols() != N)
      throw std::invalid_argument("operator matrices must all be k x N");
  }
}

Eigen::MatrixXd symbol(const Operator& op, const Eigen::VectorXd& xi) {
  if (xi.size() != op.d) throw std::invalid_argument("symbol: xi must have length d");
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(op.k, op.N);
  for (int j = 0; j < op.d; ++j) s += xi(j) * op.matrices[j];
  return s;
}

Eigen::MatrixXcd symbol(const Operator& op, const Eigen::VectorXcd& xi) {
  if (xi.size() != op.d) throw std::invalid_argument("symbol: xi must have length d");
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(op.k, op.N);
  for (int j = 0; j < op.d; ++j) s += xi(j) * op.matrices[j];
  return s;
}

Eigen::VectorXd tensor_apply(const Operator& op, const Eigen::VectorXd& v,
                             const Eigen::VectorXd& xi) {
  if (v.size() != op.N) throw std::invalid_argument("tensor_apply: v must have length N");
  return symbol(op, xi) * v;
}

}  // namespace avar
