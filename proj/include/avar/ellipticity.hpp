#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "avar/operator.hpp"

namespace avar {

enum class Field { Real, Complex };

// A direction/vector pair with symbol(xi) * v numerically zero. For real
// certificates the imaginary parts are exactly zero.
struct Witness {
  Eigen::VectorXcd xi;  // unit vector in K^d
  Eigen::VectorXcd v;   // unit vector in K^N
};

struct EllipticityCertificate {
  Field field = Field::Real;
  bool elliptic = false;
  // Minimum over all visited unit xi of the N-th singular value of the
  // symbol (zero by convention when k < N). An upper bound on the true
  // sphere minimum.
  double min_singular = 0.0;
  std::optional<Witness> witness;  // present iff not elliptic
  int samples = 0;
  int refine_rounds = 0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  // Set when min_singular lies within a decade of the tolerance, i.e. the
  // sampling did not separate the verdict cleanly.
  bool near_threshold = false;
};

struct CancellingCertificate {
  bool cancelling = false;
  int residual_dim = 0;  // dimension of the accumulated image intersection
  std::vector<Eigen::VectorXd> witness_directions;
  double tolerance = 0.0;
  int samples_used = 0;
  std::uint64_t seed = 0;
};

struct SphereMinimum {
  double value = 0.0;
  Eigen::VectorXcd argmin;  // unit vector; real field -> zero imaginary parts
};

// Injectivity-relevant singular value: the N-th singular value of the k x N
// symbol, taken as zero when k < N (a wide matrix is never injective).
double min_singular_value(const Eigen::MatrixXcd& s);
// Same, plus a unit vector achieving it (right-singular direction).
std::pair<double, Eigen::VectorXcd> min_singular_pair(const Eigen::MatrixXcd& s);

// Seeded sphere sampling plus golden-section descent along random tangent
// directions. Deterministic given (samples, refine_rounds, seed).
SphereMinimum min_singular_over_sphere(const Operator& op, Field field, int samples,
                                       int refine_rounds, std::uint64_t seed);

EllipticityCertificate check_ellipticity(const Operator& op, Field field,
                                         double tolerance = 1e-8, int samples = 4096,
                                         int refine_rounds = 3, std::uint64_t seed = 42);

// Intersects the symbol images over sampled directions until the dimension
// stabilizes. Requires an R-elliptic operator (checked). For d = 1 the image
// never varies and the operator is reported not cancelling.
CancellingCertificate check_cancelling(const Operator& op, int samples = 256,
                                       double tolerance = 1e-8, std::uint64_t seed = 42);

}  // namespace avar
