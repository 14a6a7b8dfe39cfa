#include "fluxmodes/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "fluxmodes/linalg.hpp"

namespace fluxmodes {

double beta_function(double x, double y) {
  return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

QuadratureRule gauss_jacobi_rule(int npoints, double a, double b) {
  if (npoints < 1) throw std::invalid_argument("gauss_jacobi_rule: npoints < 1");
  if (a <= -1.0 || b <= -1.0)
    throw std::invalid_argument("gauss_jacobi_rule: weight exponent <= -1 is not integrable");

  // Recurrence coefficients of the monic Jacobi polynomials for the weight
  // (1-z)^a (1+z)^b. mu0 is the zeroth moment.
  const double mu0 = std::pow(2.0, a + b + 1.0) * beta_function(a + 1.0, b + 1.0);
  std::vector<double> diag(npoints), off(npoints > 1 ? npoints - 1 : 0);
  const double apb = a + b;
  diag[0] = (b - a) / (apb + 2.0);
  for (int k = 1; k < npoints; ++k) {
    const double s = 2.0 * k + apb;
    diag[k] = (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < npoints; ++k) {
    const double s = 2.0 * k + apb;
    double bk;
    if (k == 1) {
      // (k+a+b)/(2k+a+b-1) cancels identically at k=1; written cancelled so
      // a+b = -1 does not divide by zero.
      bk = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + apb) * (2.0 + apb) * (3.0 + apb));
    } else {
      bk = 4.0 * k * (k + a) * (k + b) * (k + apb) /
           (s * s * (s + 1.0) * (s - 1.0));
    }
    off[k - 1] = std::sqrt(bk);
  }

  TridiagonalEigen eig = tridiagonal_eigen_first_row(std::move(diag), std::move(off));
  QuadratureRule rule;
  rule.alpha_exp = a;
  rule.beta_exp = b;
  rule.nodes = std::move(eig.values);
  rule.weights.resize(npoints);
  for (int i = 0; i < npoints; ++i)
    rule.weights[i] = mu0 * eig.first_components[i] * eig.first_components[i];
  return rule;
}

WeightedIntegral integrate_product(const std::function<double(double)>& f,
                                   const std::function<double(double)>& g,
                                   double a, double b, int npoints) {
  WeightedIntegral out;
  if (a <= -1.0 || b <= -1.0) {
    out.divergent = true;
    return out;
  }
  const QuadratureRule rule = gauss_jacobi_rule(npoints, a, b);
  double s = 0.0;
  for (int i = 0; i < rule.size(); ++i)
    s += rule.weights[i] * f(rule.nodes[i]) * g(rule.nodes[i]);
  out.value = s;
  return out;
}

std::vector<double> barycentric_weights(const std::vector<double>& nodes) {
  const int n = static_cast<int>(nodes.size());
  // Common scale keeps the products away from overflow for larger node sets;
  // only weight ratios ever matter.
  const double scale = n > 1 ? 4.0 / (nodes.back() - nodes.front()) : 1.0;
  std::vector<double> w(n, 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j != i) w[i] *= scale / (nodes[i] - nodes[j]);
    }
  }
  return w;
}

std::vector<std::vector<double>> differentiation_matrix(const std::vector<double>& nodes) {
  const int n = static_cast<int>(nodes.size());
  const std::vector<double> w = barycentric_weights(nodes);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      d[i][j] = (w[j] / w[i]) / (nodes[i] - nodes[j]);
      rowsum += d[i][j];
    }
    d[i][i] = -rowsum;
  }
  return d;
}

}  // namespace fluxmodes
