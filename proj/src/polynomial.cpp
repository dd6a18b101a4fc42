#include "avar/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace avar {

int Monomial::total_degree() const {
  return std::accumulate(alpha.begin(), alpha.end(), 0);
}

bool Monomial::operator<(const Monomial& o) const {
  const int da = total_degree();
  const int db = o.total_degree();
  if (da != db) return da < db;
  if (alpha != o.alpha) return alpha < o.alpha;
  return component < o.component;
}

int PolynomialVectorField::degree() const {
  int deg = 0;
  for (const auto& [m, c] : terms_) deg = std::max(deg, m.total_degree());
  return deg;
}

void PolynomialVectorField::add_term(const std::vector<int>& alpha, int component,
                                     double coeff) {
  if (static_cast<int>(alpha.size()) != d_)
    throw std::invalid_argument("polynomial term: alpha length must equal d");
  if (component < 0 || component >= nvals_)
    throw std::invalid_argument("polynomial term: component out of range");
  if (coeff == 0.0) return;
  Monomial key{alpha, component};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), coeff);
  } else {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double PolynomialVectorField::coefficient(const std::vector<int>& alpha,
                                          int component) const {
  auto it = terms_.find(Monomial{alpha, component});
  return it == terms_.end() ? 0.0 : it->second;
}

Eigen::VectorXd PolynomialVectorField::evaluate(const Eigen::VectorXd& x) const {
  if (x.size() != d_) throw std::invalid_argument("polynomial evaluate: point dim mismatch");
  // Per-axis power tables up to the degree actually present.
  const int deg = degree();
  Eigen::MatrixXd powers(d_, deg + 1);
  for (int j = 0; j < d_; ++j) {
    powers(j, 0) = 1.0;
    for (int e = 1; e <= deg; ++e) powers(j, e) = powers(j, e - 1) * x(j);
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(nvals_);
  for (const auto& [m, c] : terms_) {
    double v = c;
    for (int j = 0; j < d_; ++j) v *= powers(j, m.alpha[j]);
    out(m.component) += v;
  }
  return out;
}

double PolynomialVectorField::coefficient_norm() const {
  double s = 0.0;
  for (const auto& [m, c] : terms_) s += c * c;
  return std::sqrt(s);
}

PolynomialVectorField& PolynomialVectorField::operator+=(const PolynomialVectorField& o) {
  for (const auto& [m, c] : o.terms_) add_term(m.alpha, m.component, c);
  return *this;
}

PolynomialVectorField& PolynomialVectorField::operator*=(double c) {
  if (c == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

void PolynomialVectorField::prune(double eps) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= eps)
      it = terms_.erase(it);
    else
      ++it;
  }
}

PolynomialVectorField apply_operator_to_polynomial(const Operator& op,
                                                   const PolynomialVectorField& p) {
  if (p.dim_space() != op.d || p.dim_values() != op.N)
    throw std::invalid_argument("apply_operator_to_polynomial: dimension mismatch");
  PolynomialVectorField out(op.d, op.k);
  for (const auto& [m, c] : p.terms()) {
    for (int j = 0; j < op.d; ++j) {
      if (m.alpha[j] == 0) continue;
      std::vector<int> beta = m.alpha;
      beta[j] -= 1;
      const double dcoeff = c * m.alpha[j];
      for (int r = 0; r < op.k; ++r) {
        const double a = op.matrices[j](r, m.component);
        if (a != 0.0) out.add_term(beta, r, a * dcoeff);
      }
    }
  }
  return out;
}

std::vector<std::vector<int>> multi_indices_up_to(int d, int max_degree) {
  std::vector<std::vector<int>> result;
  std::vector<int> cur(d, 0);
  // Enumerate by total degree, lexicographic within each degree.
  for (int deg = 0; deg <= max_degree; ++deg) {
    std::vector<std::vector<int>> level;
    std::vector<int> alpha(d, 0);
    // Recursive descent without recursion: odometer over compositions.
    std::function<void(int, int)> fill = [&](int pos, int remaining) {
      if (pos == d - 1) {
        alpha[pos] = remaining;
        level.push_back(alpha);
        return;
      }
      for (int v = remaining; v >= 0; --v) {
        alpha[pos] = v;
        fill(pos + 1, remaining - v);
      }
      alpha[pos] = 0;
    };
    fill(0, deg);
    // Lexicographic ascending order within the degree block.
    std::sort(level.begin(), level.end());
    for (auto& a : level) result.push_back(std::move(a));
  }
  return result;
}

double factorial_of_multi_index(const std::vector<int>& alpha) {
  double f = 1.0;
  for (int a : alpha)
    for (int i = 2; i <= a; ++i) f *= i;
  return f;
}

}  // namespace avar
