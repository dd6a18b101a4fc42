#include "avar/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "avar/ellipticity.hpp"

namespace avar {

std::uint64_t fnv1a_hash(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

Constraint Constraint::subset(std::vector<int> cells, std::string desc) {
  Constraint c;
  c.mode = Mode::Subset;
  c.subset_cells = std::move(cells);
  c.description = std::move(desc);
  return c;
}

Constraint Constraint::whole_domain(const VoxelDomain& domain) {
  std::vector<int> all(domain.cell_count());
  std::iota(all.begin(), all.end(), 0);
  return subset(std::move(all), "subset(E=Omega)");
}

Constraint Constraint::trace(Hypersurface surface) {
  Constraint c;
  c.mode = Mode::Trace;
  c.description = "trace(" + surface.source + ")";
  c.gamma = std::move(surface);
  return c;
}

namespace {

int trace_cell_of(const Hypersurface& gamma, const Facet& facet) {
  const int cell = gamma.side == TraceSide::Inside ? facet.cell : facet.neighbor;
  if (cell < 0)
    throw std::invalid_argument("trace constraint: facet has no cell on the declared side");
  return cell;
}

struct ConstraintContext {
  KernelBasis kernel;
  DiscreteMeasure mu;
  ProjectionOperator pi;
};

ConstraintContext make_context(const Operator& op, const VoxelDomain& domain,
                               const Constraint& constraint, int degree_cap,
                               bool require_full_rank) {
  ConstraintContext ctx;
  ctx.kernel = kernel_basis(op, degree_cap);
  if (constraint.mode == Constraint::Mode::Subset) {
    if (constraint.subset_cells.empty())
      throw std::invalid_argument("subset constraint: E has no cells");
    ctx.mu = volume_measure(domain, constraint.subset_cells);
  } else {
    if (!constraint.gamma || constraint.gamma->facets.empty())
      throw std::invalid_argument("trace constraint: Gamma has no facets");
    ctx.mu = surface_measure(domain, *constraint.gamma);
  }
  ctx.pi = build_projection(ctx.kernel, ctx.mu);
  if (require_full_rank && ctx.pi.gram_rank < ctx.kernel.dimension()) {
    std::ostringstream msg;
    msg << "projection is rank-deficient on " << constraint.description << " (rank "
        << ctx.pi.gram_rank << " < nullspace dimension " << ctx.kernel.dimension()
        << "); the constraint support is too small to separate the nullspace";
    throw std::invalid_argument(msg.str());
  }
  return ctx;
}

// Samples of u (or of its trace) at the constraint's measure points.
Eigen::MatrixXd samples_at_constraint(const GridFunction& u, const VoxelDomain& domain,
                                      const Constraint& constraint,
                                      const ConstraintContext& ctx) {
  if (constraint.mode == Constraint::Mode::Subset) {
    Eigen::MatrixXd s(static_cast<int>(ctx.mu.entities.size()), u.ncomp);
    for (int q = 0; q < s.rows(); ++q) s.row(q) = u.values.row(ctx.mu.entities[q]);
    return s;
  }
  return trace_restrict(u, domain, *constraint.gamma).values;
}

// The projection functionals as linear constraints on the cell dof vector.
Eigen::MatrixXd constraint_rows(const ConstraintContext& ctx, const VoxelDomain& domain,
                                const Constraint& constraint, int ncomp) {
  const int n = domain.cell_count() * ncomp;
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(ctx.pi.gram_rank, n);
  for (int j = 0; j < ctx.pi.gram_rank; ++j) {
    for (int q = 0; q < static_cast<int>(ctx.mu.entities.size()); ++q) {
      int cell;
      if (constraint.mode == Constraint::Mode::Subset) {
        cell = ctx.mu.entities[q];
      } else {
        cell = trace_cell_of(*constraint.gamma, constraint.gamma->facets[ctx.mu.entities[q]]);
      }
      for (int c = 0; c < ncomp; ++c)
        rows(j, cell * ncomp + c) += ctx.mu.weights(q) * ctx.pi.onb_values[j](q, c);
    }
  }
  return rows;
}

Eigen::MatrixXd evaluate_field_on_cells(const PolynomialVectorField& p,
                                        const VoxelDomain& domain) {
  Eigen::MatrixXd vals(domain.cell_count(), p.dim_values());
  for (int i = 0; i < domain.cell_count(); ++i)
    vals.row(i) = p.evaluate(domain.cell_center(i)).transpose();
  return vals;
}

double l1_norm(const VoxelDomain& domain, const Eigen::MatrixXd& values) {
  return domain.cell_volume() * values.rowwise().norm().sum();
}

double l2_norm(const VoxelDomain& domain, const Eigen::MatrixXd& values) {
  return std::sqrt(domain.cell_volume()) * values.norm();
}

double lp_norm(const VoxelDomain& domain, const Eigen::MatrixXd& values, double p) {
  if (p == 1.0) return l1_norm(domain, values);
  if (p == 2.0) return l2_norm(domain, values);
  const Eigen::VectorXd rows = values.rowwise().norm();
  double sum = 0.0;
  for (int i = 0; i < rows.size(); ++i) sum += std::pow(rows(i), p);
  return std::pow(domain.cell_volume() * sum, 1.0 / p);
}

void fill_report_header(ConstantEstimate& est, const Operator& op,
                        const VoxelDomain& domain, const Constraint& constraint) {
  est.operator_name = op.name;
  est.domain_spec = domain.spec();
  est.domain_hash = fnv1a_hash(domain.spec());
  est.constraint_spec = constraint.description;
  est.h = domain.spacing();
}

}  // namespace

double boundary_tensor_term(const Operator& op, const VoxelDomain& domain,
                            const GridFunction& u) {
  double sum = 0.0;
  for (const Facet& f : domain.boundary_facets()) {
    const Eigen::VectorXd trace = u.values.row(f.cell).transpose();
    sum += domain.facet_area() * tensor_apply(op, trace, f.normal).norm();
  }
  return sum;
}

GridFunction random_smooth_field(const VoxelDomain& domain, int ncomp, Rng& rng) {
  const int d = domain.dim();
  const auto [lo, hi] = domain.bounding_box();

  // Mode lattice {0..4}^d without the origin.
  std::vector<std::vector<int>> modes;
  {
    std::vector<int> m(d, 0);
    for (;;) {
      if (std::any_of(m.begin(), m.end(), [](int v) { return v != 0; })) modes.push_back(m);
      int j = d - 1;
      while (j >= 0 && ++m[j] > 4) m[j--] = 0;
      if (j < 0) break;
    }
  }
  const auto poly_idx = multi_indices_up_to(d, 3);

  // All coefficients are drawn up front in a fixed order so that evaluation
  // order cannot change the stream.
  struct ComponentCoeffs {
    std::vector<double> cos_amp, sin_amp, poly;
  };
  std::vector<ComponentCoeffs> coeffs(ncomp);
  for (int c = 0; c < ncomp; ++c) {
    for (std::size_t m = 0; m < modes.size(); ++m) {
      coeffs[c].cos_amp.push_back(rng.normal());
      coeffs[c].sin_amp.push_back(rng.normal());
    }
    for (std::size_t a = 0; a < poly_idx.size(); ++a) coeffs[c].poly.push_back(rng.normal());
  }

  GridFunction u = GridFunction::zeros_on_cells(domain, ncomp);
  Eigen::VectorXd extent = hi - lo;
  for (int i = 0; i < domain.cell_count(); ++i) {
    const Eigen::VectorXd x = domain.cell_center(i);
    Eigen::VectorXd t(d);
    for (int j = 0; j < d; ++j) t(j) = (x(j) - lo(j)) / extent(j);
    for (int c = 0; c < ncomp; ++c) {
      double v = 0.0;
      for (std::size_t m = 0; m < modes.size(); ++m) {
        double angle = 0.0;
        for (int j = 0; j < d; ++j) angle += modes[m][j] * t(j);
        angle *= M_PI;
        v += coeffs[c].cos_amp[m] * std::cos(angle) + coeffs[c].sin_amp[m] * std::sin(angle);
      }
      for (std::size_t a = 0; a < poly_idx.size(); ++a) {
        double mono = 1.0;
        for (int j = 0; j < d; ++j)
          for (int e = 0; e < poly_idx[a][j]; ++e) mono *= t(j);
        v += coeffs[c].poly[a] * mono;
      }
      u.values(i, c) = v;
    }
  }
  return u;
}

GridFunction mollified_ball_indicator(const VoxelDomain& domain, int ncomp, Rng& rng) {
  const int d = domain.dim();
  const auto [lo, hi] = domain.bounding_box();
  const Eigen::VectorXd mid = 0.5 * (lo + hi);
  const double extent = (hi - lo).minCoeff();

  Eigen::VectorXd center(d);
  for (int j = 0; j < d; ++j) center(j) = mid(j) + 0.15 * extent * (rng.uniform01() - 0.5);
  const double rho = extent * rng.uniform(0.2, 0.35);
  const double width = rho * rng.uniform(0.3, 0.6);
  Eigen::VectorXd amplitude(ncomp);
  for (int c = 0; c < ncomp; ++c) amplitude(c) = rng.normal();

  return sample_on_cells(domain, ncomp, [&](const Eigen::VectorXd& x) {
    const double z = (rho - (x - center).norm()) / width;
    double s = 0.0;
    if (z >= 1.0)
      s = 1.0;
    else if (z > 0.0)
      s = z * z * (3.0 - 2.0 * z);
    return Eigen::VectorXd(amplitude * s);
  });
}

ConstantEstimate poincare_constant_p2(const Operator& op, const VoxelDomain& domain,
                                      const Constraint& constraint,
                                      const PoincareOptions& opts) {
  ConstantEstimate est;
  est.inequality =
      constraint.mode == Constraint::Mode::Subset ? "subset_poincare" : "trace_poincare";
  est.p = 2.0;
  est.method = "eigenproblem";
  est.seed = opts.seed;
  est.solver_tolerance = opts.solver_tol;
  fill_report_header(est, op, domain, constraint);

  if (!domain.connected())
    throw std::invalid_argument("poincare_constant_p2: the domain must be connected");

  ConstraintContext ctx = make_context(op, domain, constraint, opts.kernel_degree_cap,
                                       /*require_full_rank=*/true);
  if (!ctx.kernel.stabilized) {
    if (constraint.mode == Constraint::Mode::Subset)
      throw std::invalid_argument(
          "poincare_constant_p2: nullspace did not stabilize below the degree cap; "
          "the operator is likely not C-elliptic and the subset estimate is undefined");
    const auto real_cert = check_ellipticity(op, Field::Real);
    if (!real_cert.elliptic)
      est.warning =
          "operator is not R-elliptic: a nonzero nullspace element vanishes on a "
          "hyperplane, so no finite trace constant need exist";
    else
      est.warning = ctx.kernel.warning;
  }

  const PoincarePencil pencil = assemble_poincare_pencil(op, domain);
  const Eigen::MatrixXd rows = constraint_rows(ctx, domain, constraint, op.N);
  const ConstrainedEigenResult eig = smallest_constrained_eigenpair(
      pencil.L, pencil.mass_weight, rows, opts.seed, opts.solver_tol, opts.max_iterations);

  est.eigenvalue = eig.lambda;
  est.residual = eig.residual;
  est.iterations = eig.iterations;
  est.constraint_residual = eig.constraint_residual;
  est.eigenvector = eig.vector;
  if (!eig.converged) {
    est.warning += (est.warning.empty() ? "" : "; ");
    est.warning += "eigensolver did not reach the requested residual";
  }
  est.value = eig.lambda > 0 ? 1.0 / std::sqrt(eig.lambda)
                             : std::numeric_limits<double>::infinity();
  return est;
}

ConstantEstimate poincare_l1_lower_bound(const Operator& op, const VoxelDomain& domain,
                                         const Constraint& constraint, int sample_count,
                                         std::uint64_t seed, int kernel_degree_cap) {
  ConstantEstimate est;
  est.inequality =
      constraint.mode == Constraint::Mode::Subset ? "subset_poincare" : "trace_poincare";
  est.p = 1.0;
  est.method = "sample_max";
  est.seed = seed;
  fill_report_header(est, op, domain, constraint);

  ConstraintContext ctx =
      make_context(op, domain, constraint, kernel_degree_cap, /*require_full_rank=*/true);

  Rng rng(seed);
  double best = 0.0;
  int considered = 0;

  auto consider = [&](const GridFunction& u) {
    ++considered;
    const double tv = total_A_variation(op, domain, u);
    const Eigen::MatrixXd at_mu = samples_at_constraint(u, domain, constraint, ctx);
    const ProjectionResult proj = project(ctx.pi, at_mu);
    const Eigen::MatrixXd pvals = evaluate_field_on_cells(proj.field, domain);
    const double num = l1_norm(domain, u.values - pvals);
    if (tv <= 1e-12) {
      // Nullspace elements give 0/0 and are excluded; a genuinely nonzero
      // numerator over a vanishing variation would disprove the inequality.
      if (num <= 1e-10)
        ++est.skipped;
      else
        ++est.blowup_witnesses;
      return;
    }
    best = std::max(best, num / tv);
  };

  // Canonical coordinate fields first, then the random family.
  const auto [lo, hi] = domain.bounding_box();
  for (int j = 0; j < domain.dim(); ++j) {
    for (int c = 0; c < op.N; ++c) {
      const double mid = 0.5 * (lo(j) + hi(j));
      GridFunction u = sample_on_cells(domain, op.N, [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(op.N);
        v(c) = x(j) - mid;
        return v;
      });
      consider(u);
    }
  }
  for (int s = 0; s < sample_count; ++s) consider(random_smooth_field(domain, op.N, rng));

  est.sample_count = considered;
  est.value = best;
  return est;
}

VerificationReport verify_inequality(const Operator& op, const VoxelDomain& domain,
                                     const Constraint& constraint,
                                     const ConstantEstimate& estimate, int fresh_samples,
                                     std::uint64_t seed) {
  ConstraintContext ctx =
      make_context(op, domain, constraint, 8, /*require_full_rank=*/true);

  VerificationReport report;
  report.tol_rel = 10.0 * domain.spacing();
  report.constant = estimate.value;
  Rng rng(seed);
  for (int s = 0; s < fresh_samples; ++s) {
    const GridFunction u = random_smooth_field(domain, op.N, rng);
    const Eigen::MatrixXd at_mu = samples_at_constraint(u, domain, constraint, ctx);
    const ProjectionResult proj = project(ctx.pi, at_mu);
    const Eigen::MatrixXd pvals = evaluate_field_on_cells(proj.field, domain);
    const GridFunction au = apply_discrete(op, domain, u);

    double num, den;
    if (estimate.p == 1.0) {
      num = l1_norm(domain, u.values - pvals);
      den = l1_norm(domain, au.values);
    } else {
      num = lp_norm(domain, u.values - pvals, estimate.p);
      den = lp_norm(domain, au.values, estimate.p);
    }
    ++report.samples;
    if (den <= 1e-12) {
      ++report.skipped;
      continue;
    }
    const double ratio = num / den;
    report.worst_ratio = std::max(report.worst_ratio, ratio);
    if (ratio > (1.0 + report.tol_rel) * estimate.value) ++report.violations;
  }
  return report;
}

SobolevReport sobolev_trace_verify(const Operator& op, const VoxelDomain& domain,
                                   int sample_count, std::uint64_t seed) {
  const int d = domain.dim();
  if (d < 2)
    throw std::invalid_argument(
        "sobolev_trace_verify: d = 1 is excluded (the image of the symbol is constant "
        "in xi, so the operator cannot cancel)");
  const CancellingCertificate cc = check_cancelling(op);
  if (!cc.cancelling)
    throw std::invalid_argument(
        "sobolev_trace_verify: operator is not cancelling; the L^1 Sobolev embedding "
        "hypothesis fails");

  SobolevReport report;
  report.cancelling = true;
  report.exponent = static_cast<double>(d) / (d - 1);
  report.operator_name = op.name;
  report.domain_spec = domain.spec();
  report.h = domain.spacing();
  report.seed = seed;

  Rng rng(seed);
  for (int s = 0; s < sample_count; ++s) {
    const GridFunction u = (s % 2 == 0) ? random_smooth_field(domain, op.N, rng)
                                        : mollified_ball_indicator(domain, op.N, rng);
    const double lhs = lp_norm(domain, u.values, report.exponent);
    const double rhs = total_A_variation(op, domain, u) + boundary_tensor_term(op, domain, u);
    ++report.samples;
    if (rhs <= 1e-12) {
      if (lhs <= 1e-10)
        ++report.skipped;
      else
        ++report.unbounded;
      continue;
    }
    report.max_ratio = std::max(report.max_ratio, lhs / rhs);
  }
  return report;
}

DilationStudy sobolev_dilation_study(const Operator& op, const std::vector<double>& radii,
                                     double h_per_radius) {
  if (radii.empty()) throw std::invalid_argument("sobolev_dilation_study: no radii");
  DilationStudy study;
  study.operator_name = op.name;
  for (double r : radii) {
    const VoxelDomain domain =
        build_ball(Eigen::VectorXd::Zero(op.d), r, h_per_radius * r);
    // Fixed profile in dilation-relative coordinates.
    GridFunction u = sample_on_cells(domain, op.N, [&](const Eigen::VectorXd& x) {
      const double z = (0.7 * r - x.norm()) / (0.2 * r);
      double s = 0.0;
      if (z >= 1.0)
        s = 1.0;
      else if (z > 0.0)
        s = z * z * (3.0 - 2.0 * z);
      return Eigen::VectorXd(Eigen::VectorXd::Ones(op.N) * s);
    });
    DilationRow row;
    row.radius = r;
    row.lhs = lp_norm(domain, u.values, static_cast<double>(op.d) / (op.d - 1));
    row.rhs = total_A_variation(op, domain, u) + boundary_tensor_term(op, domain, u);
    row.ratio = row.lhs / row.rhs;
    study.rows.push_back(row);
  }
  double mean = 0.0;
  for (const auto& row : study.rows) mean += row.ratio;
  mean /= static_cast<double>(study.rows.size());
  for (const auto& row : study.rows)
    study.max_relative_deviation =
        std::max(study.max_relative_deviation, std::abs(row.ratio - mean) / mean);
  return study;
}

ScalingStudy scaling_study(const Operator& op, const std::vector<double>& radii,
                           double h_per_radius, const PoincareOptions& opts) {
  if (radii.empty()) throw std::invalid_argument("scaling_study: no radii");
  ScalingStudy study;
  study.operator_name = op.name;
  for (double r : radii) {
    const VoxelDomain domain =
        build_ball(Eigen::VectorXd::Zero(op.d), r, h_per_radius * r);
    const Constraint constraint = Constraint::trace(boundary_hypersurface(domain));
    const ConstantEstimate est = poincare_constant_p2(op, domain, constraint, opts);
    ScalingRow row;
    row.radius = r;
    row.constant = est.value;
    row.constant_over_radius = est.value / r;
    study.rows.push_back(row);
  }
  double mean = 0.0;
  for (const auto& row : study.rows) mean += row.constant_over_radius;
  mean /= static_cast<double>(study.rows.size());
  for (const auto& row : study.rows)
    study.max_relative_deviation = std::max(
        study.max_relative_deviation, std::abs(row.constant_over_radius - mean) / mean);
  return study;
}

BlowupReport counterexample_blowup(const Operator& op, const VoxelDomain& domain,
                                   int kernel_degree_cap) {
  const EllipticityCertificate cert = check_ellipticity(op, Field::Real);
  if (cert.elliptic)
    throw std::invalid_argument(
        "counterexample_blowup: operator is R-elliptic; no hyperplane counterexample");
  const HyperplaneCounterexample ce = hyperplane_counterexample(op, cert);

  // omega = { <normal, x> > offset }, so Gamma is the voxelization of the
  // witness hyperplane and the trace is taken from the positive side.
  const ShapeSpec omega = ShapeSpec::halfspace(-ce.normal, -ce.offset);
  const Hypersurface gamma = select_hypersurface(domain, omega, TraceSide::Inside);

  const GridFunction f = sample_on_cells(domain, op.N, [&](const Eigen::VectorXd& x) {
    return ce.field.evaluate(x);
  });

  BlowupReport report;
  report.operator_name = op.name;
  report.domain_spec = domain.spec();
  report.h = domain.spacing();
  report.plane_normal = ce.normal;
  report.direction = ce.direction;
  report.interior_variation = total_A_variation(op, domain, f);

  const KernelBasis kernel = kernel_basis(op, kernel_degree_cap);
  // Rank deficiency is expected here: nullspace elements restricted to the
  // witness hyperplane collapse, which is the proposition's point.
  ProjectionOperator pi = build_projection(kernel, surface_measure(domain, gamma));
  const GridFunction tr = trace_restrict(f, domain, gamma);
  const ProjectionResult proj = project(pi, tr.values);
  const Eigen::MatrixXd pvals = evaluate_field_on_cells(proj.field, domain);

  report.l1_distance = l1_norm(domain, f.values - pvals);
  report.projection_norm = l1_norm(domain, pvals);
  return report;
}

}  // namespace avar
