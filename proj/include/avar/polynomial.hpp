#pragma once

#include <map>
#include <vector>

#include "avar/operator.hpp"

namespace avar {

// Monomial key: exponent multi-index plus value component, ordered
// deterministically (graded lexicographic on alpha, then component).
struct Monomial {
  std::vector<int> alpha;
  int component = 0;  // 0-based

  bool operator<(const Monomial& o) const;
  bool operator==(const Monomial& o) const {
    return component == o.component && alpha == o.alpha;
  }
  int total_degree() const;
};

// An R^N-valued polynomial in d variables, stored sparsely: only nonzero
// coefficients are kept.
class PolynomialVectorField {
 public:
  PolynomialVectorField() = default;
  PolynomialVectorField(int dim_space, int dim_values)
      : d_(dim_space), nvals_(dim_values) {}

  int dim_space() const { return d_; }
  int dim_values() const { return nvals_; }
  int degree() const;  // 0 for the zero polynomial
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  // Accumulates into the coefficient of x^alpha e_component; exact zeros are
  // dropped to keep the representation canonical.
  void add_term(const std::vector<int>& alpha, int component, double coeff);
  double coefficient(const std::vector<int>& alpha, int component) const;

  const std::map<Monomial, double>& terms() const { return terms_; }

  Eigen::VectorXd evaluate(const Eigen::VectorXd& x) const;

  // Euclidean norm of the coefficient vector.
  double coefficient_norm() const;

  PolynomialVectorField& operator+=(const PolynomialVectorField& o);
  PolynomialVectorField& operator*=(double c);
  // Drops coefficients with |c| <= eps.
  void prune(double eps);

 private:
  int d_ = 0;
  int nvals_ = 0;
  std::map<Monomial, double> terms_;
};

// Exact symbolic application of the operator: sum_j A_j d/dx_j p, an
// R^k-valued polynomial of degree max(deg p - 1, 0).
PolynomialVectorField apply_operator_to_polynomial(const Operator& op,
                                                   const PolynomialVectorField& p);

// All multi-indices over d variables with |alpha| <= max_degree, in
// deterministic graded-lex order.
std::vector<std::vector<int>> multi_indices_up_to(int d, int max_degree);

double factorial_of_multi_index(const std::vector<int>& alpha);

}  // namespace avar
