#include <doctest.h>

#include <cmath>

#include "avar/catalog.hpp"
#include "avar/inequalities.hpp"
#include "oracles.hpp"

using namespace avar;

namespace {

Eigen::VectorXd vec1(double a) {
  Eigen::VectorXd v(1);
  v << a;
  return v;
}

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

VoxelDomain unit_interval(double h) { return build_box(vec1(0), vec1(1), h); }

VoxelDomain unit_square(double h) { return build_box(vec2(0, 0), vec2(1, 1), h); }

}  // namespace

TEST_CASE("interval Poincare constants against analytic values") {
  const Operator grad = make_gradient(1);
  const VoxelDomain interval = unit_interval(1.0 / 128.0);

  const ConstantEstimate full =
      poincare_constant_p2(grad, interval, Constraint::whole_domain(interval));
  CHECK(std::abs(full.value - 1.0 / M_PI) * M_PI < 0.01);
  CHECK(full.residual.value() <= 1e-8);
  CHECK(full.method == "eigenproblem");
  CHECK(full.inequality == "subset_poincare");

  const ConstantEstimate trace = poincare_constant_p2(
      grad, interval, Constraint::trace(boundary_hypersurface(interval, 0, -1)));
  CHECK(std::abs(trace.value - 2.0 / M_PI) * M_PI / 2.0 < 0.01);
  CHECK(trace.inequality == "trace_poincare");
}

TEST_CASE("the minimizer satisfies the constraint it was solved under") {
  const Operator grad = make_gradient(1);
  const VoxelDomain interval = unit_interval(1.0 / 64.0);
  const ConstantEstimate est =
      poincare_constant_p2(grad, interval, Constraint::whole_domain(interval));
  // Mean of the eigenvector (the single projection functional).
  const double mean = interval.cell_volume() * est.eigenvector.sum();
  CHECK(std::abs(mean) <= 1e-8);
  CHECK(est.constraint_residual <= 1e-8);
}

TEST_CASE("subset monotonicity on nested left-anchored intervals") {
  const Operator grad = make_gradient(1);
  const VoxelDomain interval = unit_interval(1.0 / 128.0);
  auto left_cells = [&](double frac) {
    std::vector<int> cells;
    for (int i = 0; i < interval.cell_count(); ++i)
      if (interval.cell_center(i)(0) < frac) cells.push_back(i);
    return cells;
  };
  double prev = std::numeric_limits<double>::infinity();
  for (double frac : {0.25, 0.5, 1.0}) {
    const ConstantEstimate est = poincare_constant_p2(
        grad, interval, Constraint::subset(left_cells(frac), "subset(left)"));
    CHECK(est.value <= prev * (1.0 + 1e-6));
    prev = est.value;
  }
}

TEST_CASE("square Poincare constant matches the Neumann eigenvalue") {
  const Operator grad = make_gradient(2);
  const VoxelDomain square = unit_square(1.0 / 64.0);
  const ConstantEstimate est =
      poincare_constant_p2(grad, square, Constraint::whole_domain(square));
  CHECK(std::abs(est.value - 1.0 / M_PI) * M_PI < 0.01);
  CHECK(est.residual.value() <= 1e-8);
}

TEST_CASE("L1 lower bound on the interval brackets the sharp constant") {
  const Operator grad = make_gradient(1);
  const VoxelDomain interval = unit_interval(1.0 / 128.0);
  const double h = interval.spacing();
  const ConstantEstimate est = poincare_l1_lower_bound(
      grad, interval, Constraint::whole_domain(interval), 60, 42);
  CHECK(est.method == "sample_max");
  // The canonical field x - 1/2 yields 1/4; the sharp constant is 1/2.
  CHECK(est.value >= 0.25 * (1.0 - 10.0 * h));
  CHECK(est.value <= 0.5 * (1.0 + 10.0 * h));
  CHECK(est.blowup_witnesses == 0);
}

TEST_CASE("both sides of the ratios are 1-homogeneous") {
  const Operator grad = make_gradient(2);
  const VoxelDomain square = unit_square(1.0 / 32.0);
  Rng rng(3);
  const GridFunction u = random_smooth_field(square, 1, rng);
  GridFunction cu = u;
  cu.values *= -7.5;

  const double tv = total_A_variation(grad, square, u);
  const double tv_c = total_A_variation(grad, square, cu);
  CHECK(std::abs(tv_c - 7.5 * tv) / (7.5 * tv) < 1e-12);

  const KernelBasis kernel = kernel_basis(grad, 4);
  const DiscreteMeasure mu = volume_measure(square);
  const ProjectionOperator pi = build_projection(kernel, mu);
  const ProjectionResult pu = project(pi, u.values);
  const ProjectionResult pcu = project(pi, cu.values);
  const double num = (u.values - pu.values_at_points).rowwise().norm().dot(mu.weights);
  const double num_c =
      (cu.values - pcu.values_at_points).rowwise().norm().dot(mu.weights);
  CHECK(std::abs(num_c / num - 7.5) < 1e-10);
}

TEST_CASE("verification: eigenproblem constants see no violations") {
  for (const std::string name : {"gradient2d", "symgrad2d"}) {
    const Operator& op = catalog_entry(name).op;
    const VoxelDomain square = unit_square(1.0 / 32.0);

    const Constraint subset = Constraint::whole_domain(square);
    const ConstantEstimate est = poincare_constant_p2(op, square, subset);
    const VerificationReport rep = verify_inequality(op, square, subset, est, 50, 7);
    CHECK(rep.violations == 0);
    CHECK(rep.worst_ratio <= est.value * (1.0 + rep.tol_rel));

    const Constraint trace = Constraint::trace(boundary_hypersurface(square));
    const ConstantEstimate est_tr = poincare_constant_p2(op, square, trace);
    const VerificationReport rep_tr = verify_inequality(op, square, trace, est_tr, 50, 7);
    CHECK(rep_tr.violations == 0);
  }
}

TEST_CASE("verification accepts a sample-max bound on its own seed") {
  const Operator grad = make_gradient(1);
  const VoxelDomain interval = unit_interval(1.0 / 64.0);
  const Constraint constraint = Constraint::whole_domain(interval);
  const ConstantEstimate bound =
      poincare_l1_lower_bound(grad, interval, constraint, 40, 13);
  const VerificationReport rep = verify_inequality(grad, interval, constraint, bound, 40, 13);
  // The verification samples are a subset of the bound's sample family.
  CHECK(rep.violations == 0);
  CHECK(rep.worst_ratio <= bound.value + 1e-12);
}

TEST_CASE("rank-deficient constraints and disconnected domains are refused") {
  const Operator sg = make_symmetric_gradient(2);
  const VoxelDomain square = unit_square(1.0 / 16.0);
  // A single cell cannot separate the three rigid motions.
  CHECK_THROWS_AS(
      poincare_constant_p2(sg, square, Constraint::subset({0}, "subset(one cell)")),
      std::invalid_argument);

  // Non-C-elliptic operator with a subset constraint.
  CHECK_THROWS_AS(poincare_constant_p2(make_partial_x_only(), square,
                                       Constraint::whole_domain(square)),
                  std::invalid_argument);
}

TEST_CASE("sobolev verification on the unit disk") {
  const VoxelDomain disk = build_ball(vec2(0, 0), 1.0, 1.0 / 64.0);
  const SobolevReport rep = sobolev_trace_verify(make_gradient(2), disk, 40, 42);
  CHECK(rep.unbounded == 0);
  CHECK(rep.samples == 40);
  CHECK(rep.max_ratio > 0.0);
  CHECK(rep.max_ratio < 10.0);
  CHECK(rep.exponent == doctest::Approx(2.0));
}

TEST_CASE("sobolev ratio for the constant on the disk: sqrt(pi) over the staircase perimeter") {
  // Oracle: the voxel boundary of a disk has total facet area tending to 8r
  // (the l1 perimeter), so u == 1 gives sqrt(pi)/8 in the limit.
  const VoxelDomain disk = build_ball(vec2(0, 0), 1.0, 1.0 / 128.0);
  const GridFunction one = sample_on_cells(disk, 1, [](const Eigen::VectorXd&) {
    return vec1(1.0);
  });
  const double lhs = std::sqrt(disk.volume());
  const double rhs = total_A_variation(make_gradient(2), disk, one) +
                     boundary_tensor_term(make_gradient(2), disk, one);
  CHECK(std::abs(disk.boundary_area() - 8.0) / 8.0 < 0.02);
  CHECK(std::abs(lhs / rhs - std::sqrt(M_PI) / 8.0) / (std::sqrt(M_PI) / 8.0) < 0.02);
}

TEST_CASE("sobolev refuses d = 1 and non-cancelling operators") {
  const VoxelDomain interval = unit_interval(1.0 / 32.0);
  CHECK_THROWS_AS(sobolev_trace_verify(make_gradient(1), interval, 10, 1),
                  std::invalid_argument);
  const VoxelDomain square = unit_square(1.0 / 16.0);
  CHECK_THROWS_AS(sobolev_trace_verify(make_cauchy_riemann(), square, 10, 1),
                  std::invalid_argument);
}

TEST_CASE("dilation invariance of the sobolev ratio") {
  const DilationStudy study =
      sobolev_dilation_study(make_gradient(2), {0.5, 1.0, 2.0}, 1.0 / 64.0);
  CHECK(study.rows.size() == 3);
  CHECK(study.max_relative_deviation < 0.02);
}

TEST_CASE("scaling study: trace constant linear in the ball radius") {
  PoincareOptions opts;
  const ScalingStudy study = scaling_study(make_gradient(2), {0.5, 1.0, 2.0}, 1.0 / 24.0, opts);
  CHECK(study.rows.size() == 3);
  CHECK(study.max_relative_deviation < 0.02);
  // Identity case: the r = 1 row is the direct unit-ball computation.
  const VoxelDomain ball = build_ball(Eigen::VectorXd::Zero(2), 1.0, 1.0 / 24.0);
  const ConstantEstimate direct = poincare_constant_p2(
      make_gradient(2), ball, Constraint::trace(boundary_hypersurface(ball)), opts);
  CHECK(study.rows[1].constant == doctest::Approx(direct.value).epsilon(1e-12));
}

TEST_CASE("blow-up counterexample for the degenerate operator") {
  const Operator dx = make_partial_x_only();
  const VoxelDomain square = unit_square(1.0 / 64.0);
  const BlowupReport rep = counterexample_blowup(dx, square);
  CHECK(rep.interior_variation == 0.0);  // exact: f depends on x2 only
  CHECK(rep.l1_distance >= 0.4);
  CHECK(rep.projection_norm <= square.spacing());

  const BlowupReport fine = counterexample_blowup(dx, unit_square(1.0 / 128.0));
  CHECK(std::abs(fine.l1_distance - rep.l1_distance) / rep.l1_distance < 0.01);

  CHECK_THROWS_AS(counterexample_blowup(make_gradient(2), square), std::invalid_argument);
}

TEST_CASE("estimates carry reproducible metadata") {
  const Operator grad = make_gradient(1);
  const VoxelDomain interval = unit_interval(1.0 / 64.0);
  const ConstantEstimate est =
      poincare_constant_p2(grad, interval, Constraint::whole_domain(interval));
  CHECK(est.h == doctest::Approx(1.0 / 64.0));
  CHECK(est.domain_hash == fnv1a_hash(interval.spec()));
  CHECK(est.operator_name == "gradient1d");
}
