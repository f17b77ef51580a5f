#include "memfract/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace memfract {

namespace {

// Lanczos approximation, g = 7, n = 9.
constexpr double kG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

double lanczos_gamma(double x) {
  // Valid for x >= 0.5.
  double xm = x - 1.0;
  double a = kLanczos[0];
  double t = xm + kG + 0.5;
  for (std::size_t k = 1; k < kLanczos.size(); ++k) a += kLanczos[k] / (xm + static_cast<double>(k));
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, xm + 0.5) * std::exp(-t) * a;
}

double factorial_or_zero(double x) {
  // Exact Gamma for positive integers up to 23 (all representable).
  if (x >= 1.0 && x <= 23.0 && x == std::floor(x)) {
    double f = 1.0;
    for (int k = 2; k < static_cast<int>(x); ++k) f *= k;
    return f;
  }
  return 0.0;
}

}  // namespace

double gamma(double x) {
  if (std::isnan(x)) return x;
  if (is_nonpositive_integer(x)) {
    throw PoleError("gamma: pole at non-positive integer " + std::to_string(x));
  }
  if (double f = factorial_or_zero(x); f != 0.0) return f;
  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
  }
  if (x > 171.7) return HUGE_VAL;
  return lanczos_gamma(x);
}

double recip_gamma(double x) {
  if (std::isnan(x)) return x;
  if (is_nonpositive_integer(x)) return 0.0;
  if (double f = factorial_or_zero(x); f != 0.0) return 1.0 / f;
  if (x < 0.5) {
    return std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x) / std::numbers::pi;
  }
  if (x > 171.7) return 0.0;
  return 1.0 / lanczos_gamma(x);
}

}  // namespace memfract
