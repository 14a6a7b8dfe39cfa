#pragma once

#include <optional>

namespace fluxmodes {

// Degree and parameters of a Jacobi polynomial P_n^(alpha,beta).
// Parameters are arbitrary finite reals; values <= -1 are permitted for
// evaluation (orthogonality only holds for alpha, beta > -1).
struct JacobiSpec {
  int degree = 0;
  double alpha = 0.0;
  double beta = 0.0;
};

// Generalized binomial coefficient C(x, k) as the falling-factorial product
// x(x-1)...(x-k+1)/k!. Well defined at negative integer x, where the
// Gamma-quotient form has poles.
double binomial_general(double x, int k);

// P_n^(alpha,beta)(z) by the three-term recurrence in the degree.
// When a leading recurrence coefficient vanishes (alpha+beta a negative
// integer crossed during the upward sweep) the evaluation falls back to the
// explicit sum.
double jacobi_eval(const JacobiSpec& spec, double z);

// P_n^(alpha,beta)(z) from the explicit finite sum with generalized binomial
// coefficients. Independent of jacobi_eval; retained as its oracle.
double jacobi_eval_sum(const JacobiSpec& spec, double z);

// d/dz P_n^(alpha,beta) = ((n+alpha+beta+1)/2) P_{n-1}^(alpha+1,beta+1).
double jacobi_derivative(const JacobiSpec& spec, double z);
double jacobi_second_derivative(const JacobiSpec& spec, double z);

// Endpoint values: P_n(1) = C(n+alpha, n), P_n(-1) = (-1)^n C(n+beta, n).
double jacobi_at_plus1(const JacobiSpec& spec);
double jacobi_at_minus1(const JacobiSpec& spec);

// Order of the zero of P_n^(alpha,beta) at z = -1: equal to j when beta is a
// negative integer -j with 1 <= j <= n, else 0. Mirror version for z = +1
// (controlled by alpha).
int zero_order_at_minus1(const JacobiSpec& spec);
int zero_order_at_plus1(const JacobiSpec& spec);

// n! (n+j+other)! / ((n+j)! (n+other)!) for integer j >= 0 and real `other`,
// evaluated as a finite product so no Gamma poles are touched.
double parameter_shift_ratio(int n, int j, double other);

// Constant c in P_{n+j}^(-j, beta) = c (z-1)^j P_n^(j, beta), j >= 1.
double alpha_lowering_constant(int j, int n, double beta);
// Constant c in P_{n+j}^(alpha, -j) = c (z+1)^j P_n^(alpha, j), j >= 1.
double beta_lowering_constant(int j, int n, double alpha);

// Residuals |LHS - RHS| of the two integer-parameter lowering relations at z,
// for the given (n, alpha, beta). A residual is absent when its relation does
// not apply at that parameter point (non-integer or negative shift parameter,
// or a factorial argument at a negative integer).
struct RelationResiduals {
  std::optional<double> alpha_relation;
  std::optional<double> beta_relation;
};
RelationResiduals negative_param_relation_check(int n, int alpha, double beta,
                                                double z);

}  // namespace fluxmodes
