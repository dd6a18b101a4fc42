#include "avar/projection.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "avar/rng.hpp"

namespace avar {

namespace {

Eigen::MatrixXd evaluate_at_points(const PolynomialVectorField& p,
                                   const Eigen::MatrixXd& points) {
  Eigen::MatrixXd vals(points.rows(), p.dim_values());
  for (int q = 0; q < points.rows(); ++q)
    vals.row(q) = p.evaluate(points.row(q).transpose()).transpose();
  return vals;
}

}  // namespace

PolynomialVectorField ProjectionOperator::orthonormal_element(int j) const {
  PolynomialVectorField e(kernel_elements.front().dim_space(),
                          kernel_elements.front().dim_values());
  for (int i = 0; i < static_cast<int>(kernel_elements.size()); ++i) {
    if (onb(i, j) == 0.0) continue;
    PolynomialVectorField scaled = kernel_elements[i];
    scaled *= onb(i, j);
    e += scaled;
  }
  return e;
}

ProjectionOperator build_projection(const KernelBasis& kernel, const DiscreteMeasure& mu) {
  if (kernel.elements.empty())
    throw std::invalid_argument("build_projection: empty kernel basis");
  if (mu.weights.size() == 0 || mu.total_mass <= 0)
    throw std::invalid_argument("build_projection: measure has no mass");

  const int nb = static_cast<int>(kernel.elements.size());
  std::vector<Eigen::MatrixXd> basis_values(nb);
  for (int i = 0; i < nb; ++i)
    basis_values[i] = evaluate_at_points(kernel.elements[i], mu.points);

  Eigen::MatrixXd gram(nb, nb);
  for (int i = 0; i < nb; ++i) {
    for (int j = i; j < nb; ++j) {
      const double g =
          (basis_values[i].array() * basis_values[j].array()).rowwise().sum().matrix().dot(
              mu.weights);
      gram(i, j) = g;
      gram(j, i) = g;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const Eigen::VectorXd& ev = eig.eigenvalues();  // ascending
  const double cutoff = 1e-10 * std::max(ev(nb - 1), 0.0);

  ProjectionOperator pi;
  pi.kernel_elements = kernel.elements;
  pi.measure = mu;
  std::vector<int> keep;
  for (int i = nb - 1; i >= 0; --i)
    if (ev(i) > cutoff && ev(i) > 0) keep.push_back(i);
  pi.gram_rank = static_cast<int>(keep.size());
  pi.onb.resize(nb, pi.gram_rank);
  for (int j = 0; j < pi.gram_rank; ++j) {
    Eigen::VectorXd col = eig.eigenvectors().col(keep[j]) / std::sqrt(ev(keep[j]));
    int imax = 0;
    for (int i = 1; i < nb; ++i)
      if (std::abs(col(i)) > std::abs(col(imax))) imax = i;
    if (col(imax) < 0) col *= -1.0;
    pi.onb.col(j) = col;
  }

  pi.onb_values.resize(pi.gram_rank);
  for (int j = 0; j < pi.gram_rank; ++j) {
    Eigen::MatrixXd vals = Eigen::MatrixXd::Zero(mu.points.rows(),
                                                 kernel.elements.front().dim_values());
    for (int i = 0; i < nb; ++i)
      if (pi.onb(i, j) != 0.0) vals += pi.onb(i, j) * basis_values[i];
    pi.onb_values[j] = std::move(vals);
  }
  return pi;
}

ProjectionResult project(const ProjectionOperator& pi, const Eigen::MatrixXd& samples) {
  if (samples.rows() != pi.measure.points.rows())
    throw std::invalid_argument("project: sample count does not match the measure");
  if (pi.gram_rank > 0 && samples.cols() != pi.onb_values.front().cols())
    throw std::invalid_argument("project: sample component count mismatch");

  ProjectionResult res;
  res.coefficients.resize(pi.gram_rank);
  for (int j = 0; j < pi.gram_rank; ++j) {
    res.coefficients(j) =
        (samples.array() * pi.onb_values[j].array()).rowwise().sum().matrix().dot(
            pi.measure.weights);
  }

  const int d = pi.kernel_elements.front().dim_space();
  const int N = pi.kernel_elements.front().dim_values();
  res.field = PolynomialVectorField(d, N);
  const Eigen::VectorXd kernel_coeffs = pi.onb * res.coefficients;
  for (int i = 0; i < static_cast<int>(pi.kernel_elements.size()); ++i) {
    if (kernel_coeffs(i) == 0.0) continue;
    PolynomialVectorField scaled = pi.kernel_elements[i];
    scaled *= kernel_coeffs(i);
    res.field += scaled;
  }

  res.values_at_points = Eigen::MatrixXd::Zero(samples.rows(), samples.cols());
  for (int j = 0; j < pi.gram_rank; ++j)
    res.values_at_points += res.coefficients(j) * pi.onb_values[j];
  return res;
}

ProjectionResult l1_project(const ProjectionOperator& pi, const Eigen::MatrixXd& samples) {
  return project(pi, samples);
}

double estimate_linf_l1_constant(ProjectionOperator& pi, int samples, std::uint64_t seed) {
  const int l = pi.gram_rank;
  if (l == 0) return 0.0;

  auto ratio = [&](const Eigen::VectorXd& coeff) {
    Eigen::VectorXd pointnorm = Eigen::VectorXd::Zero(pi.measure.points.rows());
    Eigen::MatrixXd vals =
        Eigen::MatrixXd::Zero(pi.measure.points.rows(), pi.onb_values.front().cols());
    for (int j = 0; j < l; ++j) vals += coeff(j) * pi.onb_values[j];
    pointnorm = vals.rowwise().norm();
    const double sup = pointnorm.maxCoeff();
    const double l1 = pointnorm.dot(pi.measure.weights);
    return l1 > 0 ? sup / l1 : 0.0;
  };

  Rng rng(seed);
  double best = 0.0;
  Eigen::VectorXd best_coeff = Eigen::VectorXd::Unit(l, 0);
  auto consider = [&](const Eigen::VectorXd& c) {
    const double r = ratio(c);
    if (r > best) {
      best = r;
      best_coeff = c;
    }
  };

  // Axis directions first: the bound used by the L^1 operator-norm estimate
  // needs the max to dominate every single basis element.
  for (int j = 0; j < l; ++j) consider(Eigen::VectorXd::Unit(l, j));
  for (int s = 0; s < samples; ++s) consider(rng.unit_vector(l));

  // Local refinement along random tangent circles.
  if (l > 1) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double span = M_PI / 4.0;
    for (int round = 0; round < 3; ++round) {
      for (int t = 0; t < 4 * l; ++t) {
        Eigen::VectorXd tangent = rng.gaussian_vector(l);
        tangent -= best_coeff * best_coeff.dot(tangent);
        const double tn = tangent.norm();
        if (tn < 1e-12) continue;
        tangent /= tn;
        double a = -span, b = span;
        double c = b - invphi * (b - a), dd = a + invphi * (b - a);
        auto at = [&](double th) {
          return ratio(std::cos(th) * best_coeff + std::sin(th) * tangent);
        };
        double fc = at(c), fd = at(dd);
        for (int it = 0; it < 40; ++it) {
          if (fc > fd) {
            b = dd;
            dd = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = at(c);
          } else {
            a = c;
            c = dd;
            fc = fd;
            dd = a + invphi * (b - a);
            fd = at(dd);
          }
        }
        const double th = fc > fd ? c : dd;
        Eigen::VectorXd cand = std::cos(th) * best_coeff + std::sin(th) * tangent;
        cand /= cand.norm();
        consider(cand);
      }
      span *= 0.25;
    }
  }

  pi.linf_l1_constant = best;
  pi.linf_l1_samples = samples;
  pi.linf_l1_seed = seed;
  return best;
}

}  // namespace avar
