#include "avar/ellipticity.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "avar/rng.hpp"

namespace avar {

namespace {

// Golden-section minimization of f on [a, b]; returns (argmin, min).
template <typename F>
std::pair<double, double> golden_min(F&& f, double a, double b, int iters) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

double sigma_at(const Operator& op, const Eigen::VectorXcd& xi) {
  return min_singular_value(symbol(op, xi));
}

// Random tangent direction at xi on the unit sphere of the real embedding.
Eigen::VectorXcd random_tangent(const Eigen::VectorXcd& xi, Field field, Rng& rng) {
  const int n = static_cast<int>(xi.size());
  Eigen::VectorXcd t(n);
  for (;;) {
    if (field == Field::Real) {
      for (int i = 0; i < n; ++i) t(i) = rng.normal();
    } else {
      for (int i = 0; i < n; ++i) t(i) = std::complex<double>(rng.normal(), rng.normal());
    }
    t -= xi * std::real(xi.dot(t));
    const double norm = t.norm();
    if (norm > 1e-8) return t / norm;
  }
}

// Structured probe directions visited before the random sweep: coordinate
// axes, pairwise real diagonals, and (complex field) e_a +- i e_b. Exact
// degeneracies of catalog-style operators sit on these.
std::vector<Eigen::VectorXcd> probe_directions(int d, Field field) {
  std::vector<Eigen::VectorXcd> dirs;
  const double isq2 = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < d; ++a) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d);
    e(a) = 1.0;
    dirs.push_back(e);
  }
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d);
      e(a) = isq2;
      e(b) = isq2;
      dirs.push_back(e);
      e(b) = -isq2;
      dirs.push_back(e);
      if (field == Field::Complex) {
        e(b) = std::complex<double>(0.0, isq2);
        dirs.push_back(e);
        e(b) = std::complex<double>(0.0, -isq2);
        dirs.push_back(e);
      }
    }
  }
  return dirs;
}

// Phase-normalize (largest component real positive), zero components below
// an absolute threshold, renormalize.
Eigen::VectorXcd snap_unit(const Eigen::VectorXcd& x, double snap_tol) {
  const int n = static_cast<int>(x.size());
  int imax = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(x(i)) > std::abs(x(imax))) imax = i;
  Eigen::VectorXcd y = x;
  const double amax = std::abs(y(imax));
  if (amax > 0) y *= std::conj(y(imax)) / (amax * y.norm());
  for (int i = 0; i < n; ++i) {
    double re = std::real(y(i));
    double im = std::imag(y(i));
    if (std::abs(re) < snap_tol) re = 0.0;
    if (std::abs(im) < snap_tol) im = 0.0;
    y(i) = std::complex<double>(re, im);
  }
  const double norm = y.norm();
  if (norm < 0.5) return x;  // snapping destroyed the vector; keep original
  return y / norm;
}

// Orthonormal basis of the column space of the real symbol, relative
// singular value cutoff.
Eigen::MatrixXd image_basis(const Eigen::MatrixXd& s, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(s, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return Eigen::MatrixXd(s.rows(), 0);
  const double cutoff = std::max(tol * sv(0), 1e-300);
  int r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  return svd.matrixU().leftCols(r);
}

// Intersection of two subspaces given by orthonormal column bases, via
// principal angles: directions with cos(theta) >= 1 - tol are kept.
Eigen::MatrixXd intersect_subspaces(const Eigen::MatrixXd& B, const Eigen::MatrixXd& U,
                                    double tol) {
  if (B.cols() == 0 || U.cols() == 0) return Eigen::MatrixXd(B.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(B.transpose() * U, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  int r = 0;
  while (r < sv.size() && sv(r) >= 1.0 - tol) ++r;
  return B * svd.matrixU().leftCols(r);
}

}  // namespace

double min_singular_value(const Eigen::MatrixXcd& s) {
  const int k = static_cast<int>(s.rows());
  const int n = static_cast<int>(s.cols());
  if (k < n) return 0.0;  // wide symbol is never injective
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s);
  return svd.singularValues()(n - 1);
}

std::pair<double, Eigen::VectorXcd> min_singular_pair(const Eigen::MatrixXcd& s) {
  const int k = static_cast<int>(s.rows());
  const int n = static_cast<int>(s.cols());
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s, Eigen::ComputeFullV);
  Eigen::VectorXcd v = svd.matrixV().col(n - 1);
  double sigma = (k >= n) ? svd.singularValues()(n - 1) : (s * v).norm();
  return {sigma, v};
}

SphereMinimum min_singular_over_sphere(const Operator& op, Field field, int samples,
                                       int refine_rounds, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("min_singular_over_sphere: samples >= 1");
  Rng rng(seed);

  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXcd best_xi;
  auto consider = [&](const Eigen::VectorXcd& xi) {
    const double s = sigma_at(op, xi);
    if (s < best) {
      best = s;
      best_xi = xi;
    }
  };

  for (const auto& xi : probe_directions(op.d, field)) consider(xi);
  for (int i = 0; i < samples; ++i) {
    consider(field == Field::Real
                 ? Eigen::VectorXcd(rng.unit_vector(op.d).cast<std::complex<double>>())
                 : rng.unit_vector_complex(op.d));
  }

  // Derivative-free local descent: sigma_min need not be smooth at singular
  // value crossings, so golden-section along random tangents is used instead
  // of gradient steps. The real sphere in one variable is just two points
  // with equal sigma, so there is nothing to refine.
  const bool refinable = !(field == Field::Real && op.d == 1);
  double span = M_PI / 2.0;
  const int dirs_per_round = 4 * (field == Field::Real ? op.d : 2 * op.d);
  for (int round = 0; refinable && round < refine_rounds; ++round) {
    for (int t = 0; t < dirs_per_round; ++t) {
      const Eigen::VectorXcd tangent = random_tangent(best_xi, field, rng);
      auto line = [&](double theta) {
        return sigma_at(op, std::cos(theta) * best_xi + std::sin(theta) * tangent);
      };
      auto [theta, value] = golden_min(line, -span, span, 60);
      if (value < best) {
        best = value;
        best_xi = std::cos(theta) * best_xi + std::sin(theta) * tangent;
        best_xi /= best_xi.norm();
      }
    }
    span *= 0.25;
  }

  // A snapped direction (tiny components zeroed) is kept when it does not
  // worsen the minimum; exact axis/diagonal degeneracies come out clean.
  const Eigen::VectorXcd snapped = snap_unit(best_xi, 1e-6);
  if (sigma_at(op, snapped) <= best + 1e-15) {
    best_xi = snapped;
    best = sigma_at(op, snapped);
  }
  return {best, best_xi};
}

EllipticityCertificate check_ellipticity(const Operator& op, Field field, double tolerance,
                                         int samples, int refine_rounds,
                                         std::uint64_t seed) {
  if (tolerance <= 0) throw std::invalid_argument("check_ellipticity: tolerance > 0");
  const SphereMinimum sm = min_singular_over_sphere(op, field, samples, refine_rounds, seed);

  EllipticityCertificate cert;
  cert.field = field;
  cert.min_singular = sm.value;
  cert.samples = samples;
  cert.refine_rounds = refine_rounds;
  cert.tolerance = tolerance;
  cert.seed = seed;
  cert.elliptic = sm.value > tolerance;
  cert.near_threshold = sm.value > tolerance / 10.0 && sm.value < tolerance * 10.0;

  if (!cert.elliptic) {
    Witness w;
    w.xi = sm.argmin;
    if (field == Field::Real) {
      // Real arithmetic throughout: the complex SVD of a real matrix may
      // attach arbitrary unit phases to its singular vectors.
      w.xi = sm.argmin.real().cast<std::complex<double>>();
      w.xi /= w.xi.norm();
      const Eigen::MatrixXd s = symbol(op, Eigen::VectorXd(sm.argmin.real()));
      Eigen::VectorXd v;
      if (s.norm() <= tolerance) {
        // Whole symbol vanishes: every direction is annihilated; pick the
        // first coordinate for determinism.
        v = Eigen::VectorXd::Unit(op.N, 0);
      } else {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(s, Eigen::ComputeFullV);
        v = svd.matrixV().col(op.N - 1);
        const double sigma = (s * v).norm();
        const Eigen::VectorXcd vs = snap_unit(v.cast<std::complex<double>>(), 1e-6);
        const Eigen::VectorXd vr = vs.real() / vs.real().norm();
        if ((s * vr).norm() <= std::max(tolerance, sigma + 1e-15)) v = vr;
        if (v(0) == 0.0) {  // deterministic sign
          int imax = 0;
          for (int i = 1; i < op.N; ++i)
            if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
          if (v(imax) < 0) v = -v;
        } else if (v(0) < 0) {
          v = -v;
        }
      }
      w.v = v.cast<std::complex<double>>();
    } else {
      const Eigen::MatrixXcd s = symbol(op, sm.argmin);
      if (s.norm() <= tolerance) {
        w.v = Eigen::VectorXcd::Zero(op.N);
        w.v(0) = 1.0;
      } else {
        auto [sigma, v] = min_singular_pair(s);
        const Eigen::VectorXcd vs = snap_unit(v, 1e-6);
        w.v = ((s * vs).norm() <= std::max(tolerance, sigma + 1e-15)) ? vs
                                                                      : snap_unit(v, 0.0);
      }
    }
    cert.witness = w;
  }
  return cert;
}

CancellingCertificate check_cancelling(const Operator& op, int samples, double tolerance,
                                       std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("check_cancelling: samples >= 1");
  const EllipticityCertificate real = check_ellipticity(op, Field::Real, tolerance,
                                                        std::max(512, samples), 2, seed);
  if (!real.elliptic)
    throw std::invalid_argument("check_cancelling: operator is not R-elliptic");

  CancellingCertificate cert;
  cert.tolerance = tolerance;
  cert.seed = seed;

  if (op.d == 1) {
    // The image of the symbol does not depend on xi; nothing cancels.
    cert.residual_dim = static_cast<int>(image_basis(op.matrices[0], tolerance).cols());
    cert.cancelling = false;
    cert.samples_used = 1;
    cert.witness_directions.push_back(Eigen::VectorXd::Ones(1));
    return cert;
  }

  Rng rng(seed);
  Eigen::MatrixXd basis;
  int unchanged = 0;
  int used = 0;
  for (int i = 0; i < samples; ++i) {
    Eigen::VectorXd xi;
    if (i < op.d) {
      xi = Eigen::VectorXd::Zero(op.d);
      xi(i) = 1.0;
    } else {
      xi = rng.unit_vector(op.d);
    }
    const Eigen::MatrixXd img = image_basis(symbol(op, xi), tolerance);
    const int before = (i == 0) ? -1 : static_cast<int>(basis.cols());
    basis = (i == 0) ? img : intersect_subspaces(basis, img, tolerance);
    cert.witness_directions.push_back(xi);
    ++used;
    unchanged = (static_cast<int>(basis.cols()) == before) ? unchanged + 1 : 0;
    // The intersection dimension is monotone nonincreasing; a stretch of
    // unchanged samples means it has stabilized.
    if (basis.cols() == 0 || unchanged >= 10) break;
  }
  cert.samples_used = used;
  cert.residual_dim = static_cast<int>(basis.cols());
  cert.cancelling = cert.residual_dim == 0;
  return cert;
}

}  // namespace avar
