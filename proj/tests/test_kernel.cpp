#include <doctest.h>

#include "avar/catalog.hpp"
#include "avar/kernel.hpp"
#include "avar/measure.hpp"
#include "avar/projection.hpp"
#include "avar/rng.hpp"
#include "oracles.hpp"

using namespace avar;

TEST_CASE("gradient kernel is the constants at every degree cap") {
  for (int cap : {0, 1, 3, 8}) {
    const KernelBasis basis = kernel_basis(make_gradient(2), cap);
    CHECK(basis.dimension() == 1);
    CHECK(basis.stabilization_degree == 0);
    if (cap >= 2) CHECK(basis.stabilized);
  }
}

TEST_CASE("symmetric gradient kernels are the rigid motions") {
  const KernelBasis b2 = kernel_basis(make_symmetric_gradient(2), 8);
  CHECK(b2.dimension() == 3);
  CHECK(b2.stabilized);
  CHECK(b2.degree_reached <= 3);
  CHECK(b2.dimension() == oracle::affine_kernel_dimension(make_symmetric_gradient(2)));

  const KernelBasis b3 = kernel_basis(make_symmetric_gradient(3), 8);
  CHECK(b3.dimension() == 6);
  CHECK(b3.stabilized);
  CHECK(b3.dimension() == oracle::affine_kernel_dimension(make_symmetric_gradient(3)));
}

TEST_CASE("kernel elements are annihilated and linearly independent") {
  for (const std::string name : {"gradient1d", "gradient2d", "symgrad2d", "symgrad3d"}) {
    const CatalogEntry& entry = catalog_entry(name);
    const KernelBasis basis = kernel_basis(entry.op, 8);
    for (const auto& e : basis.elements)
      CHECK(apply_operator_to_polynomial(entry.op, e).coefficient_norm() <= 1e-10);

    // Gram over a lattice on the reference cube.
    const int n = basis.dimension();
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    const int pts = 4;
    std::vector<int> idx(entry.op.d, 0);
    for (;;) {
      Eigen::VectorXd x(entry.op.d);
      for (int j = 0; j < entry.op.d; ++j) x(j) = (idx[j] + 0.5) / pts;
      Eigen::MatrixXd vals(n, entry.op.N);
      for (int i = 0; i < n; ++i) vals.row(i) = basis.elements[i].evaluate(x).transpose();
      gram += vals * vals.transpose();
      int j = entry.op.d - 1;
      while (j >= 0 && ++idx[j] == pts) idx[j--] = 0;
      if (j < 0) break;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    CHECK(eig.eigenvalues()(0) > 1e-10);
  }
}

TEST_CASE("kernel dimension is monotone in the degree cap") {
  const Operator dx = make_partial_x_only();  // kernel grows without bound
  int prev = -1;
  for (int cap : {0, 1, 2, 3, 4}) {
    const KernelBasis basis = kernel_basis(dx, cap);
    CHECK(basis.dimension() >= prev);
    prev = basis.dimension();
  }
  CHECK_FALSE(kernel_basis(dx, 6).stabilized);
  CHECK_FALSE(kernel_basis(dx, 6).warning.empty());
}

TEST_CASE("kernel span is invariant under row scaling of the operator") {
  const Operator sg = make_symmetric_gradient(2);
  std::vector<Eigen::MatrixXd> scaled = sg.matrices;
  for (auto& m : scaled) m *= -2.5;
  const KernelBasis a = kernel_basis(sg, 4);
  const KernelBasis b = kernel_basis(Operator(std::move(scaled), "scaled"), 4);
  REQUIRE(a.dimension() == b.dimension());

  // Subspace comparison through evaluation Gram rank of the union.
  Rng rng(3);
  const int n = a.dimension();
  Eigen::MatrixXd vals(2 * n, 40);
  for (int s = 0; s < 20; ++s) {
    const Eigen::VectorXd x = rng.gaussian_vector(2);
    for (int i = 0; i < n; ++i) {
      vals.block(i, 2 * s, 1, 2) = a.elements[i].evaluate(x).transpose();
      vals.block(n + i, 2 * s, 1, 2) = b.elements[i].evaluate(x).transpose();
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(vals);
  lu.setThreshold(1e-8);
  CHECK(static_cast<int>(lu.rank()) == n);
}

TEST_CASE("restriction to hyperplane patches is injective for R-elliptic operators") {
  // Gram of the kernel basis under surface quadrature on five random
  // hyperplane slices must stay nonsingular. The Cauchy-Riemann nullspace
  // never stabilizes, so its degree-capped slice is used with a lower cap to
  // keep the Gram well scaled.
  Rng rng(17);
  struct Case {
    std::string name;
    int cap;
  };
  for (const Case& c : {Case{"gradient1d", 8}, Case{"gradient2d", 8},
                        Case{"symgrad2d", 8}, Case{"symgrad3d", 8},
                        Case{"cauchy_riemann", 4}}) {
    const CatalogEntry& entry = catalog_entry(c.name);
    const int d = entry.op.d;
    const KernelBasis basis = kernel_basis(entry.op, c.cap);
    Eigen::VectorXd lo = Eigen::VectorXd::Zero(d), hi = Eigen::VectorXd::Ones(d);
    const VoxelDomain box = build_box(lo, hi, 1.0 / (d == 3 ? 16.0 : 32.0));
    for (int patch = 0; patch < 5; ++patch) {
      const Eigen::VectorXd normal = rng.unit_vector(d);
      const double offset = normal.dot(0.5 * (lo + hi)) + 0.2 * (rng.uniform01() - 0.5);
      const Hypersurface gamma =
          select_hypersurface(box, ShapeSpec::halfspace(normal, offset));
      const ProjectionOperator pi =
          build_projection(basis, surface_measure(box, gamma));
      CAPTURE(c.name);
      CAPTURE(patch);
      CHECK(pi.gram_rank == basis.dimension());
    }
  }
}

TEST_CASE("hyperplane counterexample construction") {
  const Operator dx = make_partial_x_only();
  const auto cert = check_ellipticity(dx, Field::Real);
  REQUIRE_FALSE(cert.elliptic);
  const HyperplaneCounterexample ce = hyperplane_counterexample(dx, cert);

  // A f vanishes as a polynomial identity.
  CHECK(apply_operator_to_polynomial(dx, ce.field).coefficient_norm() <= 1e-10);
  CHECK(ce.field.coefficient_norm() > 0.9);

  // f vanishes identically on the hyperplane.
  Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    Eigen::VectorXd x = rng.gaussian_vector(2);
    x -= ce.normal * (ce.normal.dot(x) - ce.offset);  // project onto the plane
    CHECK(ce.field.evaluate(x).norm() < 1e-12);
  }

  // Elliptic certificates are rejected.
  const auto elliptic = check_ellipticity(make_gradient(2), Field::Real);
  CHECK_THROWS_AS(hyperplane_counterexample(make_gradient(2), elliptic),
                  std::invalid_argument);
}
