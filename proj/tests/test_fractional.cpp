#include <doctest.h>

#include "memfract/fractional.hpp"
#include "memfract/special.hpp"
#include "support.hpp"

using namespace memfract;
using memfract::test::rel_err;

TEST_CASE("gamma reaches twelve digits") {
  CHECK(rel_err(memfract::gamma(0.5), std::sqrt(M_PI)) < 1e-13);
  CHECK(rel_err(memfract::gamma(1.5), 0.5 * std::sqrt(M_PI)) < 1e-13);
  CHECK(memfract::gamma(6.0) == 120.0);
  CHECK(rel_err(memfract::gamma(-0.5), -2.0 * std::sqrt(M_PI)) < 1e-13);
  for (double x : {0.1, 0.7, 3.3, 11.25, 25.5, 60.0}) CHECK(rel_err(memfract::gamma(x), std::tgamma(x)) < 1e-12);
  CHECK(recip_gamma(0.0) == 0.0);
  CHECK(recip_gamma(-3.0) == 0.0);
  CHECK_THROWS_AS(memfract::gamma(-2.0), PoleError);
}

TEST_CASE("alpha 0 is the identity") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ut(1e-3, 171.0);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = test::random_polynomial(rng, 24);
    double t = ut(rng);
    auto terms = power_terms(p);
    CHECK(rel_err(rl_derivative_polysum(terms, 0.0, t), p(t), 1e-12) <= 1e-12);
    CHECK(rel_err(RlPolyDerivative(p, 0.0)(t), p(t), 1e-12) <= 1e-12);
  }
}

TEST_CASE("integer orders collapse to classical derivatives") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ut(1e-3, 171.0);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = test::random_polynomial(rng, 24);
    double t = ut(rng);
    auto d1 = p.derivative();
    auto d2 = d1.derivative();
    double s1 = 1.0 / 171.0, s2 = s1 * s1;  // derivative scale of O(1) values on [0, 171]
    CHECK(rel_err(RlPolyDerivative(p, 1.0)(t), d1(t), s1) <= 1e-10);
    CHECK(rel_err(RlPolyDerivative(p, 2.0)(t), d2(t), s2) <= 1e-10);
  }
}

TEST_CASE("half derivatives compose on powers") {
  for (double beta : {1.0, 1.5, 2.0, 3.7, 7.0, 12.0}) {
    PowerTerm f(1.25, beta);
    auto once = rl_derivative_term(f, 0.5);
    auto twice = rl_derivative_term(once, 0.5);
    for (double t : {0.5, 3.0, 77.0, 170.0}) {
      CHECK(rel_err(rl_derivative_power(twice, 0.0, t), rl_derivative_power(f, 1.0, t)) <= 1e-10);
    }
  }
}

TEST_CASE("closed form is linear") {
  PowerTerm f(2.0, 3.0), g(-0.5, 1.5);
  double t = 4.2, alpha = 0.7;
  std::vector<PowerTerm> sum{PowerTerm(3 * 2.0, 3.0), PowerTerm(5 * -0.5, 1.5)};
  double lhs = rl_derivative_polysum(sum, alpha, t);
  double rhs = 3 * rl_derivative_power(f, alpha, t) + 5 * rl_derivative_power(g, alpha, t);
  CHECK(rel_err(lhs, rhs) <= 1e-15);
}

TEST_CASE("closed form agrees with Grunwald-Letnikov") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ut(1.0, 170.0), ua(0.1, 1.9);
  Polynomial p(std::vector<double>{0.3, -0.02, 4e-4, -2e-6});
  auto f = [&](double t) { return p(t); };
  int worst_fail = 0;
  for (int k = 0; k < 50; ++k) {
    double t = ut(rng), alpha = ua(rng);
    double exact = RlPolyDerivative(p, alpha)(t);
    double gl = gl_derivative_numeric(f, alpha, t, 1e-4);
    if (rel_err(gl, exact) > 1e-3) ++worst_fail;
  }
  CHECK(worst_fail == 0);
}

TEST_CASE("pole and divergence conventions") {
  // D^1 of a constant has a 1/Gamma(0) weight: exactly zero.
  CHECK(rl_derivative_power(PowerTerm(5.0, 0.0), 1.0, 2.0) == 0.0);
  CHECK(rl_derivative_power(PowerTerm(5.0, 1.0), 1.0, 0.0) == 5.0);
  CHECK(rl_derivative_power(PowerTerm(5.0, 2.0), 1.0, 0.0) == 0.0);
  CHECK_THROWS_AS(rl_derivative_power(PowerTerm(1.0, 0.0), 0.5, 0.0), DivergenceError);
  CHECK_THROWS(PowerTerm(1.0, -1.0));
}
