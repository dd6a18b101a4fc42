#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "avar/discrete_ops.hpp"
#include "avar/kernel.hpp"
#include "avar/measure.hpp"
#include "avar/pencil.hpp"
#include "avar/projection.hpp"
#include "avar/rng.hpp"

namespace avar {

// The functional pinning the projection in the Poincare-type estimates:
// values on a subset E of the domain, or the trace on a hypersurface.
struct Constraint {
  enum class Mode { Subset, Trace } mode = Mode::Subset;
  std::vector<int> subset_cells;
  std::optional<Hypersurface> gamma;
  std::string description;

  static Constraint subset(std::vector<int> cells, std::string desc);
  static Constraint whole_domain(const VoxelDomain& domain);
  static Constraint trace(Hypersurface surface);
};

struct ConstantEstimate {
  std::string inequality;  // subset_poincare | trace_poincare | sobolev_trace
  double p = 2.0;
  double value = 0.0;
  std::string method;  // eigenproblem | sample_max
  std::optional<double> eigenvalue;  // lambda_min of the constrained pencil
  std::optional<double> residual;    // projected eigenresidual
  double h = 0.0;
  std::uint64_t seed = 0;
  int sample_count = 0;
  int violations = 0;
  std::string warning;

  std::string operator_name;
  std::string domain_spec;
  std::uint64_t domain_hash = 0;
  std::string constraint_spec;
  double solver_tolerance = 0.0;
  int iterations = 0;
  double constraint_residual = 0.0;
  int skipped = 0;           // sample-max runs: near-kernel samples excluded
  int blowup_witnesses = 0;  // samples with vanishing right side but nonzero left

  // In-memory only: the minimizing eigenvector for invariant checks.
  Eigen::VectorXd eigenvector;
};

struct PoincareOptions {
  int kernel_degree_cap = 8;
  double solver_tol = 5e-9;  // projected eigenresidual target
  int max_iterations = 400;
  std::uint64_t seed = 42;
};

// Discrete sharp constant of || u - Pi u ||_{L^2} <= C || A_h u ||_{L^2}:
// lambda_min of the stiffness/mass pencil restricted to the kernel of the
// projection functionals, C = lambda_min^{-1/2}.
ConstantEstimate poincare_constant_p2(const Operator& op, const VoxelDomain& domain,
                                      const Constraint& constraint,
                                      const PoincareOptions& opts = {});

// Certified lower bound for the p = 1 constant: max ratio over canonical
// coordinate fields plus seeded random smooth fields.
ConstantEstimate poincare_l1_lower_bound(const Operator& op, const VoxelDomain& domain,
                                         const Constraint& constraint, int sample_count,
                                         std::uint64_t seed, int kernel_degree_cap = 8);

struct VerificationReport {
  int samples = 0;
  int violations = 0;
  double worst_ratio = 0.0;
  double tol_rel = 0.0;
  double constant = 0.0;
  int skipped = 0;
};

// Independent re-sampling check of an estimate: counts violations of
// ||u - Pi u||_p <= (1 + tol_rel) C RHS(u) with tol_rel = 10 h.
VerificationReport verify_inequality(const Operator& op, const VoxelDomain& domain,
                                     const Constraint& constraint,
                                     const ConstantEstimate& estimate, int fresh_samples,
                                     std::uint64_t seed);

struct SobolevReport {
  int samples = 0;
  double max_ratio = 0.0;
  int unbounded = 0;
  int skipped = 0;
  double exponent = 0.0;  // d / (d - 1)
  bool cancelling = false;
  std::string operator_name;
  std::string domain_spec;
  double h = 0.0;
  std::uint64_t seed = 0;
};

// Empirical constant of ||u||_{d/(d-1)} <= C (|Au|(Omega) + boundary term)
// over smooth fields and mollified indicators. Refuses d = 1 and
// non-cancelling operators.
SobolevReport sobolev_trace_verify(const Operator& op, const VoxelDomain& domain,
                                   int sample_count, std::uint64_t seed);

struct DilationRow {
  double radius = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct DilationStudy {
  std::vector<DilationRow> rows;
  double max_relative_deviation = 0.0;
  std::string operator_name;
};

// Both sides of the trace-style Sobolev inequality are (d-1)-homogeneous
// under dilation; the ratio for a fixed profile must not move.
DilationStudy sobolev_dilation_study(const Operator& op, const std::vector<double>& radii,
                                     double h_per_radius);

struct ScalingRow {
  double radius = 0.0;
  double constant = 0.0;
  double constant_over_radius = 0.0;
};

struct ScalingStudy {
  std::vector<ScalingRow> rows;
  double max_relative_deviation = 0.0;  // of C(r)/r around its mean
  std::string operator_name;
};

// Trace constant on balls B_r with Gamma = boundary: C(r)/r is constant.
ScalingStudy scaling_study(const Operator& op, const std::vector<double>& radii,
                           double h_per_radius, const PoincareOptions& opts = {});

struct BlowupReport {
  double interior_variation = 0.0;  // exactly zero on interior cells
  double l1_distance = 0.0;         // ||f - Pi_Gamma tr f||_{L^1}
  double projection_norm = 0.0;     // ||Pi_Gamma tr f||_{L^1}
  Eigen::VectorXd plane_normal;
  Eigen::VectorXd direction;
  std::string operator_name;
  std::string domain_spec;
  double h = 0.0;
};

// For a non-R-elliptic operator: builds the hyperplane counterexample pair
// and certifies that the trace inequality right side vanishes while the left
// side stays bounded away from zero.
BlowupReport counterexample_blowup(const Operator& op, const VoxelDomain& domain,
                                   int kernel_degree_cap = 8);

// Sum over boundary facets of h^{d-1} |trace tensored with the outward normal|.
double boundary_tensor_term(const Operator& op, const VoxelDomain& domain,
                            const GridFunction& u);

// Seeded sample families. Smooth fields are cosine/sine modes up to
// wavenumber 4 on the bounding box plus polynomials up to degree 3 with
// standard normal coefficients.
GridFunction random_smooth_field(const VoxelDomain& domain, int ncomp, Rng& rng);
GridFunction mollified_ball_indicator(const VoxelDomain& domain, int ncomp, Rng& rng);

// FNV-1a of a string; used to stamp reports with the domain spec.
std::uint64_t fnv1a_hash(const std::string& text);

}  // namespace avar
