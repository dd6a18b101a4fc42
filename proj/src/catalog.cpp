#include "avar/catalog.hpp"

#include <cmath>
#include <stdexcept>

namespace avar {

Operator make_gradient(int d) {
  std::vector<Eigen::MatrixXd> mats(d, Eigen::MatrixXd::Zero(d, 1));
  for (int j = 0; j < d; ++j) mats[j](j, 0) = 1.0;
  return Operator(std::move(mats), "gradient" + std::to_string(d) + "d");
}

Operator make_symmetric_gradient(int d) {
  // Rows indexed by pairs (a, b), a <= b: the (a, b) entry of the symmetric
  // part of the Jacobian, off-diagonal entries carrying the factor 1/2.
  const int k = d * (d + 1) / 2;
  std::vector<Eigen::MatrixXd> mats(d, Eigen::MatrixXd::Zero(k, d));
  int row = 0;
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      if (a == b) {
        mats[a](row, a) = 1.0;
      } else {
        mats[a](row, b) = 0.5;
        mats[b](row, a) = 0.5;
      }
      ++row;
    }
  }
  return Operator(std::move(mats), "symgrad" + std::to_string(d) + "d");
}

Operator make_cauchy_riemann() {
  Eigen::MatrixXd a1(2, 2), a2(2, 2);
  a1 << 1, 0, 0, 1;
  a2 << 0, -1, 1, 0;
  return Operator({a1, a2}, "cauchy_riemann");
}

Operator make_partial_x_only() {
  return Operator({Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Zero(2, 2)},
                  "dx_only");
}

Operator make_divergence(int d) {
  std::vector<Eigen::MatrixXd> mats(d, Eigen::MatrixXd::Zero(1, d));
  for (int j = 0; j < d; ++j) mats[j](0, j) = 1.0;
  return Operator(std::move(mats), "divergence" + std::to_string(d) + "d");
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> list;

    {
      CatalogEntry e;
      e.name = "gradient1d";
      e.op = make_gradient(1);
      e.real_elliptic = e.complex_elliptic = true;
      e.kernel_dimension = 1;
      e.cancelling = false;  // d = 1: the image never varies
      e.constants["poincare_p2_interval_full"] = {
          1.0 / M_PI, "reciprocal square root of the first nonzero Neumann eigenvalue"};
      e.constants["poincare_p2_interval_trace_left"] = {
          2.0 / M_PI,
          "reciprocal square root of the first mixed Dirichlet/Neumann eigenvalue"};
      list.push_back(std::move(e));
    }
    {
      CatalogEntry e;
      e.name = "gradient2d";
      e.op = make_gradient(2);
      e.real_elliptic = e.complex_elliptic = true;
      e.kernel_dimension = 1;
      e.cancelling = true;
      e.constants["poincare_p2_square_full"] = {
          1.0 / M_PI,
          "reciprocal square root of the first nonzero Neumann eigenvalue of the square"};
      list.push_back(std::move(e));
    }
    {
      CatalogEntry e;
      e.name = "symgrad2d";
      e.op = make_symmetric_gradient(2);
      e.real_elliptic = e.complex_elliptic = true;
      e.kernel_dimension = 3;  // two translations and the infinitesimal rotation
      e.cancelling = true;
      list.push_back(std::move(e));
    }
    {
      CatalogEntry e;
      e.name = "symgrad3d";
      e.op = make_symmetric_gradient(3);
      e.real_elliptic = e.complex_elliptic = true;
      e.kernel_dimension = 6;  // rigid motions of R^3
      e.cancelling = true;
      list.push_back(std::move(e));
    }
    {
      CatalogEntry e;
      e.name = "cauchy_riemann";
      e.op = make_cauchy_riemann();
      e.real_elliptic = true;    // det symbol = xi_1^2 + xi_2^2
      e.complex_elliptic = false;  // vanishes on xi proportional to (1, i)
      e.cancelling = false;  // the symbol is invertible for real xi, image everything
      list.push_back(std::move(e));
    }
    {
      CatalogEntry e;
      e.name = "dx_only";
      e.op = make_partial_x_only();
      e.real_elliptic = false;  // symbol vanishes at xi = (0, 1)
      e.complex_elliptic = false;
      list.push_back(std::move(e));
    }
    {
      CatalogEntry e;
      e.name = "divergence2d";
      e.op = make_divergence(2);
      e.real_elliptic = false;  // wide symbol (k = 1 < N = 2) is never injective
      e.complex_elliptic = false;
      list.push_back(std::move(e));
    }
    return list;
  }();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw std::invalid_argument("unknown catalog operator: " + name);
}

bool catalog_has(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return true;
  return false;
}

}  // namespace avar
