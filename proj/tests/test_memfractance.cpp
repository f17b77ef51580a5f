#include <doctest.h>

#include <algorithm>

#include "memfract/io.hpp"
#include "memfract/memfractance.hpp"
#include "memfract/pipeline.hpp"
#include "memfract/roots.hpp"
#include "support.hpp"

using namespace memfract;
using memfract::test::rel_err;

namespace {

// Triangle-like sweep on [0, 10] with a current that changes sign twice.
const Polynomial kVoltage(std::vector<double>{-1.0, 0.8, -0.08});
const Polynomial kCurrent(std::vector<double>{-2e-9, 1.5e-9, -1.6e-10, 2e-12});

}  // namespace

TEST_CASE("order pair validation") {
  CHECK_THROWS_AS(FracOrderPair(-0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(FracOrderPair(1.0, 2.1), std::invalid_argument);
  CHECK(FracOrderPair(1.5, 0.0).m1() == 2);
  CHECK(FracOrderPair(1.0, 0.2).m1() == 1);
  CHECK(FracOrderPair(1.0, 0.2).m2() == 1);
}

TEST_CASE("alpha (1,1) gives v / i") {
  auto model = model_from_global(kVoltage, kCurrent, 10.0);
  FracOrderPair a(1.0, 1.0);
  for (double t = 0.05; t <= 10.0; t += 0.1) {
    double i = kCurrent(t);
    if (std::abs(i) <= 1e-12) continue;
    try {
      CHECK(rel_err(model.eval(a, t) * i, kVoltage(t)) <= 1e-9);
    } catch (const SingularityError&) {
    }
  }
}

TEST_CASE("scale covariance") {
  auto flux = integrate_polynomial(kVoltage);
  auto charge = integrate_polynomial(kCurrent);
  for (double a1 : {0.3, 1.0, 1.7}) {
    for (double a2 : {0.2, 1.0, 1.9}) {
      FracOrderPair a(a1, a2);
      for (double t : {0.7, 3.3, 8.1}) {
        double f = eval_global(flux, charge, a, t);
        CHECK(rel_err(eval_global(flux.scaled(3.0), charge, a, t), 3.0 * f) <= 1e-13);
        CHECK(rel_err(eval_global(flux, charge.scaled(4.0), a, t), f / 4.0) <= 1e-13);
      }
    }
  }
}

TEST_CASE("piecewise with identical pieces matches the global model before T") {
  auto flux = integrate_polynomial(kVoltage);
  auto charge = integrate_polynomial(kCurrent);
  PiecewisePolynomial fpw(flux, flux, 5.0, 10.0), qpw(charge, charge, 5.0, 10.0);
  FracOrderPair a(1.4, 0.6);
  for (double t = 0.1; t < 5.0; t += 0.37) {
    CHECK(rel_err(eval_piecewise(fpw, qpw, a, t), eval_global(flux, charge, a, t)) <= 1e-9);
  }
  // Identical pieces carry no jump, so the right branch agrees as well.
  CHECK(rel_err(eval_piecewise(fpw, qpw, a, 7.5), eval_global(flux, charge, a, 7.5)) <= 1e-9);
  CHECK_THROWS_AS(eval_piecewise(fpw, qpw, a, 5.3), ExcludedPointError);
}

TEST_CASE("piecewise exclusion window sits right of the breakpoint") {
  auto v = parse_polynomial_json(read_text_file(test::data_path("fixtures/voltage_piecewise_deg5.json")));
  auto i = parse_polynomial_json(read_text_file(test::data_path("fixtures/current_piecewise_deg5.json")));
  auto model = model_from_piecewise(*v.piecewise, *i.piecewise, 0.33);
  auto w = model.exclusion_window();
  REQUIRE(w);
  CHECK(w->first == doctest::Approx(87.23747459));
  CHECK(w->second == doctest::Approx(87.89747459));
  CHECK(model.excluded(87.5));
  CHECK_FALSE(model.excluded(87.2));
  CHECK_FALSE(model.excluded(87.95));
}

TEST_CASE("find_zeros residuals and brackets") {
  auto f = [](double t) { return std::cos(t) * 1e-9; };
  auto z = find_zeros(f, 0.0, 10.0, 200);
  REQUIRE(z.zeros.size() == 3);
  for (double t : z.zeros) {
    CHECK(std::abs(f(t)) <= 1e-9 * 1e-6);
    CHECK(f(t - 1e-6) * f(t + 1e-6) < 0);
  }
  // A pole is a sign change but not a zero.
  auto g = [](double t) { return 1.0 / (t - 2.5); };
  CHECK(find_zeros(g, 0.0, 5.0, 64).zeros.empty());
}

TEST_CASE("reconstruction is the analytic current") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ua(0.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    auto v = test::random_polynomial(rng, 24);
    auto i = test::random_polynomial(rng, 24);
    auto charge = integrate_polynomial(i);
    FracOrderPair a(ua(rng), ua(rng));
    auto rec = reconstruct_current(integrate_polynomial(v), charge, a);
    CHECK(rec.coeffs() == charge.derivative().coeffs());
  }
}

TEST_CASE("numeric reconstruction follows the identity") {
  auto charge = integrate_polynomial(kCurrent);
  for (double a2 : {0.0, 0.4, 1.0, 1.6}) {
    for (double t : {0.5, 4.0, 9.0}) {
      CHECK(rel_err(reconstruct_current_numeric(charge, FracOrderPair(1.2, a2), t), kCurrent(t), 1e-12) <= 1e-9);
    }
  }
}

TEST_CASE("matched couples share a zero") {
  auto model = model_from_global(kVoltage, kCurrent, 10.0);
  auto grid = model.default_grid(512);
  auto a1 = std::vector<double>{};
  for (int k = 0; k <= 40; ++k) a1.push_back(0.05 * k);
  auto couples = matched_zero_couples(model, a1, {0.5, 1.0}, grid, 0.05, 2);
  REQUIRE_FALSE(couples.empty());
  for (const auto& c : couples) {
    auto nz = model.numerator_zeros(c.alpha1, grid);
    bool near = std::any_of(nz.begin(), nz.end(), [&](double z) { return std::abs(z - c.t_star) <= 0.05; });
    CHECK(near);
  }
  auto serial = matched_zero_couples(model, a1, {0.5, 1.0}, grid, 0.05, 1);
  REQUIRE(serial.size() == couples.size());
  for (std::size_t k = 0; k < serial.size(); ++k) CHECK(serial[k].alpha1 == couples[k].alpha1);
}
