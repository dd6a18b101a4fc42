#pragma once

#include <cstdint>

#include "avar/kernel.hpp"
#include "avar/measure.hpp"

namespace avar {

// L^2(mu)-orthogonal projection onto the span of a kernel basis. The
// orthonormal basis e_1..e_l is stored as coefficient combinations of the
// kernel elements, so projected fields evaluate anywhere in R^d.
struct ProjectionOperator {
  std::vector<PolynomialVectorField> kernel_elements;
  Eigen::MatrixXd onb;  // kernel_elements.size() x l
  DiscreteMeasure measure;
  int gram_rank = 0;  // l
  // Cached values e_j(x_q): one (points x N) matrix per orthonormal element.
  std::vector<Eigen::MatrixXd> onb_values;

  // Empirical constant of the sup-vs-integral norm equivalence on the span,
  // filled by estimate_linf_l1_constant.
  double linf_l1_constant = 0.0;
  int linf_l1_samples = 0;
  std::uint64_t linf_l1_seed = 0;

  int l() const { return gram_rank; }
  // e_j as a polynomial field.
  PolynomialVectorField orthonormal_element(int j) const;
};

// Assembles the Gram matrix of the kernel elements under mu and factors it
// with relative cutoff 1e-10. A measure supported on too small a set yields
// gram_rank < dim N(A); the projection is then onto the separated part.
ProjectionOperator build_projection(const KernelBasis& kernel, const DiscreteMeasure& mu);

struct ProjectionResult {
  Eigen::VectorXd coefficients;  // against e_1..e_l
  PolynomialVectorField field;
  // Values of the projection at the measure points (points x N).
  Eigen::MatrixXd values_at_points;
};

// samples: one row per measure point, N columns.
ProjectionResult project(const ProjectionOperator& pi, const Eigen::MatrixXd& samples);

// The L^1(mu) extension of the projection; same bilinear formula, named so
// the L^1 operator-norm estimates have an explicit target.
ProjectionResult l1_project(const ProjectionOperator& pi, const Eigen::MatrixXd& samples);

// Maximizes ||q||_inf / ||q||_L1(mu) over the unit coefficient sphere of the
// span by seeded sampling (canonical axis directions always included) plus
// golden-section refinement; the result is a certified lower bound.
double estimate_linf_l1_constant(ProjectionOperator& pi, int samples = 10000,
                                 std::uint64_t seed = 42);

}  // namespace avar
