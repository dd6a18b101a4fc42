#pragma once

#include <cstdint>
#include <Eigen/Dense>

namespace avar {

// Deterministic random source. All randomized routines in the library draw
// from this wrapper instead of std:: distributions, whose output is
// implementation-defined; identical seeds must give identical streams on
// every platform we build for.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  // 64-bit splitmix step; passes through mt19937-free for portability.
  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53 random bits.
  double uniform01();

  double uniform(double lo, double hi);

  // Standard normal via Box-Muller; one spare value cached.
  double normal();

  int uniform_int(int lo, int hi);  // inclusive bounds

  Eigen::VectorXd gaussian_vector(int dim);

  // Uniform on the real unit sphere S^{dim-1}.
  Eigen::VectorXd unit_vector(int dim);

  // Uniform on the complex unit sphere in C^dim (real dimension 2*dim).
  Eigen::VectorXcd unit_vector_complex(int dim);

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace avar
