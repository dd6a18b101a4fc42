#pragma once

#include <string>
#include <vector>

#include "avar/ellipticity.hpp"
#include "avar/operator.hpp"
#include "avar/polynomial.hpp"

namespace avar {

// Basis of the polynomial nullspace of the operator, computed degree by
// degree. For a C-elliptic operator the dimension stops growing at some
// finite degree; stabilized records whether that was observed below the cap.
struct KernelBasis {
  std::vector<PolynomialVectorField> elements;
  Operator op;
  int degree_cap = 0;
  int degree_reached = 0;        // largest degree actually solved
  int stabilization_degree = 0;  // smallest degree already spanning the basis
  bool stabilized = false;
  std::string warning;

  int dimension() const { return static_cast<int>(elements.size()); }
};

// Solves the exact linear system A p = 0 on coefficient vectors of
// polynomial fields of degree <= m, for m = 0, 1, ... until the nullspace
// dimension is unchanged over two consecutive increments or the cap is hit.
// Basis vectors are orthonormal in the factorial-scaled coefficient inner
// product and deterministic.
KernelBasis kernel_basis(const Operator& op, int degree_cap = 8);

// The constructive failure of the trace inequality for a non-R-elliptic
// operator: the plane through the origin normal to the witness direction,
// and the field f(x) = <xi, x> v, which lies in the nullspace and vanishes
// identically on the plane.
struct HyperplaneCounterexample {
  Eigen::VectorXd normal;  // unit witness direction xi
  double offset = 0.0;     // plane { x : <normal, x> = offset }
  Eigen::VectorXd direction;  // unit witness vector v
  PolynomialVectorField field;
};

HyperplaneCounterexample hyperplane_counterexample(const Operator& op,
                                                   const EllipticityCertificate& cert);

}  // namespace avar
