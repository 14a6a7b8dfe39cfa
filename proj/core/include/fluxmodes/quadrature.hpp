#pragma once

#include <functional>
#include <vector>

namespace fluxmodes {

// Gauss rule on (-1,1) for the weight (1-z)^a (1+z)^b, a, b > -1.
// Nodes are strictly increasing, weights positive, and
// sum(weights) = 2^(a+b+1) B(a+1, b+1).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double alpha_exp = 0.0;  // a in (1-z)^a
  double beta_exp = 0.0;   // b in (1+z)^b

  int size() const { return static_cast<int>(nodes.size()); }
};

double beta_function(double x, double y);

// Golub-Welsch construction from the Jacobi recurrence coefficients.
// Throws std::invalid_argument for npoints < 1 or exponents <= -1.
QuadratureRule gauss_jacobi_rule(int npoints, double a, double b);

// Integral over (-1,1) of (1-z)^a (1+z)^b f(z) g(z). `divergent` is set
// (and the value meaningless) when a <= -1 or b <= -1.
struct WeightedIntegral {
  double value = 0.0;
  bool divergent = false;
};
WeightedIntegral integrate_product(const std::function<double(double)>& f,
                                   const std::function<double(double)>& g,
                                   double a, double b, int npoints);

// Barycentric Lagrange machinery on a fixed node set; exact for polynomial
// data of degree < npoints. Used for spectral differentiation of grid data.
std::vector<double> barycentric_weights(const std::vector<double>& nodes);
// Dense first-derivative matrix on the given nodes.
std::vector<std::vector<double>> differentiation_matrix(const std::vector<double>& nodes);

}  // namespace fluxmodes
