#include <doctest.h>

#include <cmath>

#include "avar/catalog.hpp"
#include "avar/discrete_ops.hpp"
#include "avar/inequalities.hpp"
#include "avar/kernel.hpp"
#include "avar/rng.hpp"

using namespace avar;

namespace {

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

Eigen::VectorXd vec1(double a) {
  Eigen::VectorXd v(1);
  v << a;
  return v;
}

}  // namespace

TEST_CASE("central and one-sided differences are exact on affine data") {
  const VoxelDomain square = build_box(vec2(0, 0), vec2(1, 1), 1.0 / 16.0);
  const Operator grad = make_gradient(2);
  const GridFunction u = sample_on_cells(square, 1, [](const Eigen::VectorXd& x) {
    return vec1(x(0));
  });
  const GridFunction g = apply_discrete(grad, square, u);
  for (int i = 0; i < square.cell_count(); ++i) {
    CHECK(g.values(i, 0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(g.values(i, 1) == doctest::Approx(0.0).epsilon(1e-13));
  }
}

TEST_CASE("rigid motions are discretely exact for the symmetric gradient") {
  const VoxelDomain square = build_box(vec2(0, 0), vec2(1, 1), 1.0 / 8.0);
  const Operator sg = make_symmetric_gradient(2);
  const GridFunction u = sample_on_cells(square, 2, [](const Eigen::VectorXd& x) {
    return vec2(1.0 - x(1), 2.0 + x(0));  // translation plus rotation
  });
  const GridFunction e = apply_discrete(sg, square, u);
  CHECK(e.values.cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("interior truncation error of sin is O(h^2)") {
  const Operator grad = make_gradient(2);
  auto interior_error = [&](double h) {
    const VoxelDomain square = build_box(vec2(0, 0), vec2(1, 1), h);
    const GridFunction u = sample_on_cells(square, 1, [](const Eigen::VectorXd& x) {
      return vec1(std::sin(M_PI * x(0)));
    });
    const GridFunction g = apply_discrete(grad, square, u);
    double worst = 0.0;
    for (int i = 0; i < square.cell_count(); ++i) {
      bool interior = true;
      for (int axis = 0; axis < 2; ++axis)
        interior = interior && square.neighbor(i, axis, +1) >= 0 &&
                   square.neighbor(i, axis, -1) >= 0;
      if (!interior) continue;
      const double exact = M_PI * std::cos(M_PI * square.cell_center(i)(0));
      worst = std::max(worst, std::abs(g.values(i, 0) - exact));
    }
    return worst;
  };
  const double e32 = interior_error(1.0 / 32.0);
  const double e64 = interior_error(1.0 / 64.0);
  CHECK(e32 / e64 > 3.0);
  CHECK(e32 / e64 < 5.0);
}

TEST_CASE("total variation quadrature basics") {
  const Operator grad1 = make_gradient(1);
  const VoxelDomain interval = build_box(vec1(0), vec1(1), 1.0 / 64.0);

  const GridFunction c = sample_on_cells(interval, 1, [](const Eigen::VectorXd&) {
    return vec1(3.25);
  });
  CHECK(total_A_variation(grad1, interval, c) == 0.0);

  const GridFunction x = sample_on_cells(interval, 1, [](const Eigen::VectorXd& p) {
    return vec1(p(0));
  });
  CHECK(total_A_variation(grad1, interval, x) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sampled kernel elements have vanishing discrete variation") {
  const Operator sg = make_symmetric_gradient(2);
  const KernelBasis basis = kernel_basis(sg, 4);
  const VoxelDomain square = build_box(vec2(0, 0), vec2(1, 1), 1.0 / 32.0);
  for (const auto& e : basis.elements) {
    const GridFunction u = sample_on_cells(square, 2, [&](const Eigen::VectorXd& x) {
      return e.evaluate(x);
    });
    // Affine elements are exact even at the one-sided boundary cells.
    CHECK(total_A_variation(sg, square, u) < 1e-12);
  }
}

TEST_CASE("total variation is invariant under nullspace shifts") {
  const Operator sg = make_symmetric_gradient(2);
  const KernelBasis basis = kernel_basis(sg, 4);
  const VoxelDomain square = build_box(vec2(0, 0), vec2(1, 1), 1.0 / 32.0);
  Rng rng(77);
  const GridFunction u = random_smooth_field(square, 2, rng);
  const double tv = total_A_variation(sg, square, u);
  for (const auto& q : basis.elements) {
    GridFunction shifted = u;
    for (int i = 0; i < square.cell_count(); ++i)
      shifted.values.row(i) += 3.0 * q.evaluate(square.cell_center(i)).transpose();
    const double tv_shifted = total_A_variation(sg, square, shifted);
    CHECK(std::abs(tv_shifted - tv) / tv <= 10.0 * square.spacing());
  }
}

TEST_CASE("trace side resolves the indicator ambiguity") {
  // Omega = (-1, 1), Gamma = {0}, u the indicator of (0, 1): the trace is 1
  // from the right and 0 from the left.
  const VoxelDomain interval = build_box(vec1(-1), vec1(1), 1.0 / 32.0);
  const GridFunction u = sample_on_cells(interval, 1, [](const Eigen::VectorXd& x) {
    return vec1(x(0) > 0 ? 1.0 : 0.0);
  });
  const ShapeSpec right_half = ShapeSpec::halfspace(vec1(-1.0), 0.0);  // { x > 0 }

  const Hypersurface from_right = select_hypersurface(interval, right_half,
                                                      TraceSide::Inside);
  REQUIRE(from_right.facets.size() == 1);
  CHECK(from_right.facets[0].center(0) == doctest::Approx(0.0));
  CHECK(trace_restrict(u, interval, from_right).values(0, 0) == 1.0);

  const Hypersurface from_left = select_hypersurface(interval, right_half,
                                                     TraceSide::Outside);
  CHECK(trace_restrict(u, interval, from_left).values(0, 0) == 0.0);
}

TEST_CASE("two-sided traces of a continuous function differ by O(h)") {
  auto gap = [](double h) {
    const VoxelDomain interval = build_box(vec1(-1), vec1(1), h);
    const GridFunction u = sample_on_cells(interval, 1, [](const Eigen::VectorXd& x) {
      return vec1(std::cos(x(0)) + x(0));
    });
    const ShapeSpec right_half = ShapeSpec::halfspace(vec1(-1.0), 0.0);
    const auto inside = trace_restrict(
        u, interval, select_hypersurface(interval, right_half, TraceSide::Inside));
    const auto outside = trace_restrict(
        u, interval, select_hypersurface(interval, right_half, TraceSide::Outside));
    return (inside.values - outside.values).cwiseAbs().maxCoeff();
  };
  const double g16 = gap(1.0 / 16.0);
  const double g32 = gap(1.0 / 32.0);
  CHECK(g16 < 0.2);
  CHECK(g32 < 0.6 * g16);
}

TEST_CASE("trace of a polynomial matches its facet-center values to O(h)") {
  const VoxelDomain square = build_box(vec2(0, 0), vec2(1, 1), 1.0 / 32.0);
  const KernelBasis basis = kernel_basis(make_symmetric_gradient(2), 4);
  const Hypersurface gamma = boundary_hypersurface(square);
  for (const auto& e : basis.elements) {
    const GridFunction u = sample_on_cells(square, 2, [&](const Eigen::VectorXd& x) {
      return e.evaluate(x);
    });
    const GridFunction tr = trace_restrict(u, square, gamma);
    for (int f = 0; f < static_cast<int>(gamma.facets.size()); ++f) {
      const Eigen::VectorXd exact = e.evaluate(gamma.facets[f].center);
      CHECK((tr.values.row(f).transpose() - exact).norm() < 2.0 * square.spacing());
    }
  }
}

TEST_CASE("trace from the missing side is an input error") {
  const VoxelDomain square = build_box(vec2(0, 0), vec2(1, 1), 0.25);
  GridFunction u = sample_on_cells(square, 1, [](const Eigen::VectorXd&) {
    return vec1(1.0);
  });
  Hypersurface boundary = boundary_hypersurface(square);
  boundary.side = TraceSide::Outside;  // no cells outside the domain
  CHECK_THROWS_AS(trace_restrict(u, square, boundary), std::invalid_argument);
}

TEST_CASE("extension by zero: constants on the unit square") {
  const Operator grad = make_gradient(2);
  const VoxelDomain square = build_box(vec2(0, 0), vec2(1, 1), 1.0 / 64.0);
  const GridFunction one = sample_on_cells(square, 1, [](const Eigen::VectorXd&) {
    return vec1(1.0);
  });
  const ExtensionReport report = extend_by_zero(grad, square, one, 2);
  CHECK(report.interior == 0.0);
  CHECK(report.boundary == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(report.total == doctest::Approx(4.0).epsilon(1e-12));

  const GridFunction zero = GridFunction::zeros_on_cells(square, 1);
  const ExtensionReport trivial = extend_by_zero(grad, square, zero, 2);
  CHECK(trivial.interior == 0.0);
  CHECK(trivial.boundary == 0.0);
  CHECK(trivial.total == 0.0);
}

TEST_CASE("extension decomposition identity is exact on boxes") {
  const VoxelDomain square = build_box(vec2(0, 0), vec2(1, 1), 1.0 / 32.0);
  Rng rng(31);
  for (const std::string name : {"gradient2d", "symgrad2d"}) {
    const Operator& op = catalog_entry(name).op;
    for (int s = 0; s < 5; ++s) {
      const GridFunction u = random_smooth_field(square, op.N, rng);
      const ExtensionReport report = extend_by_zero(op, square, u, 2);
      const double sum = report.interior + report.boundary;
      CHECK(std::abs(report.total - sum) <= 1e-10 * std::max(1.0, report.total));
    }
  }
}
