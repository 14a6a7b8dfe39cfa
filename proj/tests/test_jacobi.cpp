#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fluxmodes/jacobi.hpp"

using namespace fluxmodes;

namespace {

double fd_derivative(const JacobiSpec& s, double z, double h) {
  return (jacobi_eval(s, z + h) - jacobi_eval(s, z - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("degree zero is the constant 1") {
  CHECK(jacobi_eval({0, 0.3, -0.5}, 0.7) == 1.0);
  CHECK(jacobi_eval_sum({0, 2.1, -0.9}, -0.4) == 1.0);
}

TEST_CASE("degree one matches the explicit linear form") {
  for (double a : {-0.5, 0.0, 1.0, 2.3}) {
    for (double b : {-0.9, 0.0, 0.5, 3.1}) {
      for (double z : {-0.8, 0.1, 0.9}) {
        const double expected = (a + 1.0) + 0.5 * (a + b + 2.0) * (z - 1.0);
        CHECK(jacobi_eval({1, a, b}, z) == doctest::Approx(expected).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("recurrence matches the explicit sum across the parameter grid") {
  const double as[] = {-0.9, -0.5, 0.0, 0.5, 1.0, 2.7};
  const double zs[] = {-0.99, -0.5, 0.0, 0.5, 0.99};
  for (int n = 0; n <= 10; ++n) {
    for (double a : as) {
      for (double b : as) {
        for (double z : zs) {
          const double v1 = jacobi_eval({n, a, b}, z);
          const double v2 = jacobi_eval_sum({n, a, b}, z);
          CHECK(std::abs(v1 - v2) <= 1e-10 * (1.0 + std::abs(v1)));
        }
      }
    }
  }
}

TEST_CASE("cross-check at a specific off-grid point") {
  const double v1 = jacobi_eval({4, 2.0, -0.5}, 0.31);
  const double v2 = jacobi_eval_sum({4, 2.0, -0.5}, 0.31);
  CHECK(std::abs(v1 - v2) <= 1e-12 * std::abs(v1));
  const double w1 = jacobi_eval({2, 0.0, -0.5}, 0.0);
  const double w2 = jacobi_eval_sum({2, 0.0, -0.5}, 0.0);
  CHECK(std::abs(w1 - w2) <= 1e-12 * (1.0 + std::abs(w1)));
}

TEST_CASE("negative integer alpha stays finite through the sum") {
  const double v = jacobi_eval_sum({3, -2.0, 1.0}, 0.5);
  CHECK(std::isfinite(v));
  // Consistency with the lowering relation P_{n+j}^{(-j,b)} = c (z-1)^j P_n^{(j,b)}.
  const double c = alpha_lowering_constant(2, 1, 1.0);
  const double rhs = c * std::pow(0.5 - 1.0, 2) * jacobi_eval({1, 2.0, 1.0}, 0.5);
  CHECK(v == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("degenerate recurrence coefficients fall back to the sum") {
  // alpha+beta = -2 makes the k=2 leading coefficient vanish.
  const JacobiSpec s{3, -1.3, -0.7};
  const double v1 = jacobi_eval(s, 0.37);
  const double v2 = jacobi_eval_sum(s, 0.37);
  CHECK(v1 == doctest::Approx(v2).epsilon(1e-12));
  const JacobiSpec s2{3, -2.5, -1.5};  // alpha+beta = -4 hits k=3
  CHECK(jacobi_eval(s2, -0.2) == doctest::Approx(jacobi_eval_sum(s2, -0.2)).epsilon(1e-12));
}

TEST_CASE("symmetry under z -> -z swaps the parameters") {
  const double as[] = {-0.9, -0.5, 0.0, 0.5, 1.0, 2.7};
  for (int n = 0; n <= 8; ++n) {
    for (double a : as) {
      for (double b : as) {
        for (double z : {-0.7, 0.2, 0.85}) {
          const double lhs = jacobi_eval({n, a, b}, -z);
          const double rhs = (n % 2 == 0 ? 1.0 : -1.0) * jacobi_eval({n, b, a}, z);
          CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
        }
      }
    }
  }
}

TEST_CASE("endpoint value is the generalized binomial") {
  for (int n = 0; n <= 9; ++n) {
    for (double a : {-0.5, 0.0, 1.3, 4.0}) {
      const double lhs = jacobi_eval({n, a, 0.7}, 1.0);
      const double rhs = binomial_general(n + a, n);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
      CHECK(jacobi_at_plus1({n, a, 0.7}) == doctest::Approx(rhs));
    }
  }
}

TEST_CASE("derivative identity against central differences") {
  CHECK(jacobi_derivative({0, 1.0, 2.0}, 0.3) == 0.0);
  for (double a : {-0.5, 0.0, 1.0}) {
    for (double b : {-0.5, 0.5, 2.0}) {
      const double expected = 0.5 * (a + b + 2.0);
      CHECK(jacobi_derivative({1, a, b}, 0.1) == doctest::Approx(expected).epsilon(1e-13));
    }
  }
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> zdist(-0.9, 0.9);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = trial % 7;
    const double a = -0.8 + 0.35 * (trial % 9);
    const double b = -0.6 + 0.3 * (trial % 8);
    const double z = zdist(rng);
    const JacobiSpec s{n, a, b};
    CHECK(std::abs(jacobi_derivative(s, z) - fd_derivative(s, z, 1e-5)) <= 1e-6);
  }
  CHECK(std::abs(jacobi_derivative({5, 1.0, -0.5}, 0.2) -
                 fd_derivative({5, 1.0, -0.5}, 0.2, 1e-5)) <= 1e-7);
}

TEST_CASE("integer-parameter lowering relations hold on random points") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> zdist(-0.999, 0.999);
  for (int alpha = 0; alpha <= 5; ++alpha) {
    for (int beta = 0; beta <= 5; ++beta) {
      for (int n = 0; n <= 8; ++n) {
        for (int t = 0; t < 20; ++t) {
          const RelationResiduals r =
              negative_param_relation_check(n, alpha, beta, zdist(rng));
          REQUIRE(r.alpha_relation.has_value());
          REQUIRE(r.beta_relation.has_value());
          CHECK(*r.alpha_relation <= 1e-10);
          CHECK(*r.beta_relation <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("lowering-relation spot values") {
  const RelationResiduals r1 = negative_param_relation_check(2, 1, 1.0, 0.4);
  REQUIRE(r1.alpha_relation.has_value());
  CHECK(*r1.alpha_relation < 1e-10);
  const RelationResiduals r2 = negative_param_relation_check(1, 0, 2.0, -0.3);
  REQUIRE(r2.beta_relation.has_value());
  CHECK(*r2.beta_relation < 1e-10);
  const RelationResiduals r3 = negative_param_relation_check(0, 1, 0.0, 0.9);
  REQUIRE(r3.alpha_relation.has_value());
  CHECK(*r3.alpha_relation < 1e-12);
}

TEST_CASE("relation flagged inapplicable at factorial poles") {
  // n + beta = -2 sits on a negative integer.
  const RelationResiduals r = negative_param_relation_check(1, 2, -3.0, 0.2);
  CHECK(!r.alpha_relation.has_value());
}

TEST_CASE("zero order bookkeeping at the endpoints") {
  CHECK(zero_order_at_minus1({3, 0.5, -2.0}) == 2);
  CHECK(zero_order_at_minus1({1, 0.5, -2.0}) == 0);  // degree too small
  CHECK(zero_order_at_minus1({3, 0.5, -0.5}) == 0);  // not an integer
  CHECK(zero_order_at_plus1({4, -3.0, 0.0}) == 3);
  // And the polynomial really vanishes there.
  CHECK(std::abs(jacobi_eval_sum({3, 0.5, -2.0}, -1.0)) < 1e-14);
}
