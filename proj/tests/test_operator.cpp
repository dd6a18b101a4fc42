#include <doctest.h>

#include <Eigen/SVD>

#include "avar/catalog.hpp"
#include "avar/operator.hpp"
#include "avar/rng.hpp"
#include "oracles.hpp"

using namespace avar;

TEST_CASE("symbol of the gradient is xi itself") {
  const Operator grad = make_gradient(2);
  Eigen::VectorXd xi(2);
  xi << 3, 4;
  const Eigen::MatrixXd s = symbol(grad, xi);
  CHECK(s.rows() == 2);
  CHECK(s.cols() == 1);
  CHECK(s(0, 0) == 3.0);
  CHECK(s(1, 0) == 4.0);
}

TEST_CASE("symbol at xi = 0 is the zero matrix") {
  for (const auto& entry : catalog()) {
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(entry.op.d);
    CHECK(symbol(entry.op, zero).norm() == 0.0);
  }
}

TEST_CASE("Cauchy-Riemann symbol at (1, i) annihilates (1, -i)") {
  const Operator cr = make_cauchy_riemann();
  Eigen::VectorXcd xi(2);
  xi << 1.0, std::complex<double>(0, 1);
  const Eigen::MatrixXcd s = symbol(cr, xi);

  // Oracle: the matrix written out by hand, decomposed directly.
  Eigen::MatrixXcd expected(2, 2);
  expected << 1.0, std::complex<double>(0, -1), std::complex<double>(0, 1), 1.0;
  CHECK((s - expected).norm() < 1e-15);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(expected);
  CHECK(svd.singularValues()(1) < 1e-14);

  Eigen::VectorXcd v(2);
  v << 1.0, std::complex<double>(0, -1);
  CHECK((s * v).norm() < 1e-14);
}

TEST_CASE("tensor_apply matches the symbol and is bilinear") {
  const Operator grad = make_gradient(2);
  Eigen::VectorXd v1(1), xi(2);
  v1 << 2;
  xi << 1, 1;
  const Eigen::VectorXd out = tensor_apply(grad, v1, xi);
  CHECK(out(0) == 2.0);
  CHECK(out(1) == 2.0);
  CHECK(tensor_apply(grad, Eigen::VectorXd::Zero(1), xi).norm() == 0.0);

  const Operator sg = make_symmetric_gradient(2);
  Eigen::VectorXd v(2), eta(2);
  v << 1, 0;
  eta << 0, 1;
  const Eigen::VectorXd t = tensor_apply(sg, v, eta);
  CHECK(t(0) == 0.0);
  CHECK(t(1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(t(2) == 0.0);
}

TEST_CASE("symbol is linear in xi") {
  Rng rng(7);
  for (const auto& entry : catalog()) {
    for (int trial = 0; trial < 20; ++trial) {
      const double a = rng.normal(), b = rng.normal();
      const Eigen::VectorXd xi = rng.gaussian_vector(entry.op.d);
      const Eigen::VectorXd eta = rng.gaussian_vector(entry.op.d);
      const Eigen::MatrixXd lhs = symbol(entry.op, Eigen::VectorXd(a * xi + b * eta));
      const Eigen::MatrixXd rhs = a * symbol(entry.op, xi) + b * symbol(entry.op, eta);
      CHECK((lhs - rhs).norm() < 1e-12);
    }
  }
}

TEST_CASE("tensor_apply agrees with symbol application on random input") {
  Rng rng(8);
  for (const auto& entry : catalog()) {
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::VectorXd v = rng.gaussian_vector(entry.op.N);
      const Eigen::VectorXd xi = rng.gaussian_vector(entry.op.d);
      CHECK((tensor_apply(entry.op, v, xi) - symbol(entry.op, xi) * v).norm() < 1e-12);
    }
  }
}

TEST_CASE("dimension mismatches are input errors") {
  const Operator grad = make_gradient(2);
  const Eigen::VectorXd bad3 = Eigen::VectorXd::Zero(3);
  const Eigen::VectorXd bad2 = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(symbol(grad, bad3), std::invalid_argument);
  CHECK_THROWS_AS(tensor_apply(grad, bad2, bad2), std::invalid_argument);
  CHECK_THROWS_AS(Operator({Eigen::MatrixXd::Zero(2, 1), Eigen::MatrixXd::Zero(1, 1)}),
                  std::invalid_argument);
}
