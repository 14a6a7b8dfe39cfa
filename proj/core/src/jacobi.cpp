#include "fluxmodes/jacobi.hpp"

#include <cmath>
#include <stdexcept>

namespace fluxmodes {

namespace {

bool is_integer(double x) { return x == std::floor(x); }

double int_pow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

double binomial_general(double x, int k) {
  if (k < 0) return 0.0;
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (x - i) / (i + 1.0);
  return r;
}

double jacobi_eval_sum(const JacobiSpec& spec, double z) {
  const int n = spec.degree;
  if (n < 0) throw std::invalid_argument("jacobi_eval_sum: negative degree");
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    sum += binomial_general(n + spec.alpha, k) *
           binomial_general(n + spec.beta, n - k) * int_pow(1.0 + z, k) *
           int_pow(z - 1.0, n - k);
  }
  return std::ldexp(sum, -n);
}

double jacobi_eval(const JacobiSpec& spec, double z) {
  const int n = spec.degree;
  if (n < 0) throw std::invalid_argument("jacobi_eval: negative degree");
  const double a = spec.alpha, b = spec.beta;
  if (n == 0) return 1.0;
  double pm1 = 1.0;
  double p = (a + 1.0) + 0.5 * (a + b + 2.0) * (z - 1.0);
  const double apb = a + b;
  for (int k = 2; k <= n; ++k) {
    // Vanishing leading coefficient: alpha+beta = -k or alpha+beta = 2-2k.
    if (std::abs(k + apb) < 1e-9 || std::abs(2.0 * k + apb - 2.0) < 1e-9)
      return jacobi_eval_sum(spec, z);
    const double c = 2.0 * k * (k + apb) * (2.0 * k + apb - 2.0);
    const double A = (2.0 * k + apb - 1.0) * (2.0 * k + apb) * (2.0 * k + apb - 2.0);
    const double B = (2.0 * k + apb - 1.0) * (a * a - b * b);
    const double C = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + apb);
    const double next = ((A * z + B) * p - C * pm1) / c;
    pm1 = p;
    p = next;
  }
  return p;
}

double jacobi_derivative(const JacobiSpec& spec, double z) {
  if (spec.degree <= 0) return 0.0;
  const JacobiSpec d{spec.degree - 1, spec.alpha + 1.0, spec.beta + 1.0};
  return 0.5 * (spec.degree + spec.alpha + spec.beta + 1.0) * jacobi_eval(d, z);
}

double jacobi_second_derivative(const JacobiSpec& spec, double z) {
  if (spec.degree <= 1) return 0.0;
  const JacobiSpec d{spec.degree - 2, spec.alpha + 2.0, spec.beta + 2.0};
  return 0.25 * (spec.degree + spec.alpha + spec.beta + 1.0) *
         (spec.degree + spec.alpha + spec.beta + 2.0) * jacobi_eval(d, z);
}

double jacobi_at_plus1(const JacobiSpec& spec) {
  return binomial_general(spec.degree + spec.alpha, spec.degree);
}

double jacobi_at_minus1(const JacobiSpec& spec) {
  const double v = binomial_general(spec.degree + spec.beta, spec.degree);
  return (spec.degree % 2 == 0) ? v : -v;
}

int zero_order_at_minus1(const JacobiSpec& spec) {
  const double b = spec.beta;
  if (b >= 0.0 || !is_integer(b)) return 0;
  const int j = static_cast<int>(-b);
  return (j >= 1 && j <= spec.degree) ? j : 0;
}

int zero_order_at_plus1(const JacobiSpec& spec) {
  const double a = spec.alpha;
  if (a >= 0.0 || !is_integer(a)) return 0;
  const int j = static_cast<int>(-a);
  return (j >= 1 && j <= spec.degree) ? j : 0;
}

double parameter_shift_ratio(int n, int j, double other) {
  if (n < 0 || j < 0) throw std::invalid_argument("parameter_shift_ratio: negative index");
  double r = 1.0;
  for (int i = 1; i <= j; ++i) r *= (n + other + i) / (n + i);
  return r;
}

double alpha_lowering_constant(int j, int n, double beta) {
  return std::ldexp(parameter_shift_ratio(n, j, beta), -j);
}

double beta_lowering_constant(int j, int n, double alpha) {
  return std::ldexp(parameter_shift_ratio(n, j, alpha), -j);
}

RelationResiduals negative_param_relation_check(int n, int alpha, double beta,
                                                double z) {
  if (n < 0) throw std::invalid_argument("negative_param_relation_check: n < 0");
  RelationResiduals out;
  // Factorial arguments n, n+alpha+beta, n+alpha, n+beta must stay clear of
  // negative integers for the Gamma continuation to make sense.
  auto factorials_ok = [&](double a, double b) {
    for (double arg : {static_cast<double>(n), n + a + b, n + a, n + b}) {
      if (arg < 0.0 && is_integer(arg)) return false;
    }
    return true;
  };
  if (alpha >= 0 && factorials_ok(alpha, beta)) {
    const double lhs =
        jacobi_eval({n + alpha, -static_cast<double>(alpha), beta}, z);
    const double rhs = alpha_lowering_constant(alpha, n, beta) *
                       int_pow(z - 1.0, alpha) *
                       jacobi_eval({n, static_cast<double>(alpha), beta}, z);
    out.alpha_relation = std::abs(lhs - rhs);
  }
  if (beta >= 0.0 && is_integer(beta) && factorials_ok(alpha, beta)) {
    const int jb = static_cast<int>(beta);
    const double lhs = jacobi_eval({n + jb, static_cast<double>(alpha), -beta}, z);
    const double rhs = beta_lowering_constant(jb, n, alpha) *
                       int_pow(z + 1.0, jb) *
                       jacobi_eval({n, static_cast<double>(alpha), beta}, z);
    out.beta_relation = std::abs(lhs - rhs);
  }
  return out;
}

}  // namespace fluxmodes
