#include <doctest.h>

#include "avar/catalog.hpp"
#include "avar/polynomial.hpp"
#include "avar/rng.hpp"
#include "oracles.hpp"

using namespace avar;

namespace {

PolynomialVectorField infinitesimal_rotation_2d() {
  PolynomialVectorField p(2, 2);  // (-x2, x1)
  p.add_term({0, 1}, 0, -1.0);
  p.add_term({1, 0}, 1, 1.0);
  return p;
}

}  // namespace

TEST_CASE("sparse storage stays canonical") {
  PolynomialVectorField p(2, 1);
  p.add_term({1, 0}, 0, 2.0);
  p.add_term({1, 0}, 0, -2.0);  // cancels exactly
  CHECK(p.is_zero());
  p.add_term({2, 1}, 0, 0.0);  // exact zero never stored
  CHECK(p.term_count() == 0);
  p.add_term({2, 1}, 0, 1e-13);
  p.prune(1e-12);
  CHECK(p.is_zero());
  CHECK(p.degree() == 0);
}

TEST_CASE("evaluation: constants and the rotation field") {
  PolynomialVectorField c(3, 2);
  c.add_term({0, 0, 0}, 0, 4.0);
  c.add_term({0, 0, 0}, 1, -1.5);
  Eigen::VectorXd x(3);
  x << 0.3, -2.0, 7.0;
  CHECK((c.evaluate(x) - Eigen::Vector2d(4.0, -1.5)).norm() == 0.0);

  const PolynomialVectorField rot = infinitesimal_rotation_2d();
  Eigen::VectorXd y(2);
  y << 1, 2;
  CHECK((rot.evaluate(y) - Eigen::Vector2d(-2.0, 1.0)).norm() == 0.0);
}

TEST_CASE("evaluation matches the naive per-term oracle") {
  Rng rng(11);
  PolynomialVectorField p(2, 3);
  for (int t = 0; t < 12; ++t) {
    p.add_term({rng.uniform_int(0, 2), rng.uniform_int(0, 2)}, rng.uniform_int(0, 2),
               rng.normal());
  }
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::VectorXd x = rng.gaussian_vector(2);
    CHECK((p.evaluate(x) - oracle::evaluate_naive(p, x)).norm() < 1e-14);
  }
}

TEST_CASE("operator application: gradient of a constant and of x1") {
  const Operator grad = make_gradient(2);
  PolynomialVectorField c(2, 1);
  c.add_term({0, 0}, 0, 3.0);
  CHECK(apply_operator_to_polynomial(grad, c).is_zero());

  PolynomialVectorField x1(2, 1);
  x1.add_term({1, 0}, 0, 1.0);
  const PolynomialVectorField g = apply_operator_to_polynomial(grad, x1);
  CHECK(g.degree() == 0);
  CHECK(g.coefficient({0, 0}, 0) == 1.0);
  CHECK(g.coefficient({0, 0}, 1) == 0.0);
}

TEST_CASE("operator application: symmetric gradient kills rotations") {
  const Operator sg = make_symmetric_gradient(2);
  CHECK(apply_operator_to_polynomial(sg, infinitesimal_rotation_2d()).is_zero());
}

TEST_CASE("operator application is linear and drops the degree") {
  Rng rng(13);
  const Operator sg = make_symmetric_gradient(2);
  PolynomialVectorField p(2, 2), q(2, 2);
  for (int t = 0; t < 10; ++t) {
    p.add_term({rng.uniform_int(0, 2), rng.uniform_int(0, 2)}, rng.uniform_int(0, 1),
               rng.normal());
    q.add_term({rng.uniform_int(0, 2), rng.uniform_int(0, 2)}, rng.uniform_int(0, 1),
               rng.normal());
  }
  CHECK(apply_operator_to_polynomial(sg, p).degree() <= std::max(p.degree() - 1, 0));

  PolynomialVectorField sum = p;
  sum += q;
  PolynomialVectorField image_sum = apply_operator_to_polynomial(sg, sum);
  PolynomialVectorField expected = apply_operator_to_polynomial(sg, p);
  expected += apply_operator_to_polynomial(sg, q);
  expected *= -1.0;
  image_sum += expected;
  CHECK(image_sum.coefficient_norm() < 1e-12);
}

TEST_CASE("multi-index enumeration is graded and complete") {
  const auto idx = multi_indices_up_to(2, 3);
  CHECK(idx.size() == 10);
  CHECK(idx.front() == std::vector<int>({0, 0}));
  for (std::size_t i = 1; i < idx.size(); ++i) {
    const int da = idx[i - 1][0] + idx[i - 1][1];
    const int db = idx[i][0] + idx[i][1];
    CHECK(da <= db);
  }
  CHECK(factorial_of_multi_index({3, 2}) == 12.0);
}
