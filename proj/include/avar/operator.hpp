#pragma once

#include <string>
#include <vector>
#include <Eigen/Dense>

namespace avar {

// A constant-coefficient homogeneous first order differential operator
// from R^N-valued to R^k-valued functions of d variables, given by the
// matrix family A_1, ..., A_d applied to the partial derivatives.
struct Operator {
  int d = 0;  // number of space variables
  int N = 0;  // components of the argument function
  int k = 0;  // components of the image
  std::vector<Eigen::MatrixXd> matrices;  // d matrices, each k x N
  std::string name;

  Operator() = default;
  Operator(std::vector<Eigen::MatrixXd> mats, std::string label = "");

  const Eigen::MatrixXd& matrix(int j) const { return matrices.at(j); }
  // Transpose family defining the formal adjoint.
  Eigen::MatrixXd adjoint_matrix(int j) const { return matrices.at(j).transpose(); }
};

// Symbol map: sum_j xi_j A_j, a k x N matrix over the field of xi.
Eigen::MatrixXd symbol(const Operator& op, const Eigen::VectorXd& xi);
Eigen::MatrixXcd symbol(const Operator& op, const Eigen::VectorXcd& xi);

// v tensored by xi through the operator: symbol(xi) applied to v.
Eigen::VectorXd tensor_apply(const Operator& op, const Eigen::VectorXd& v,
                             const Eigen::VectorXd& xi);

}  // namespace avar
