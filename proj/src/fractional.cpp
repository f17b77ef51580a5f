#include "memfract/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "memfract/special.hpp"

namespace memfract {

PowerTerm::PowerTerm(double a_, double beta_) : a(a_), beta(beta_) {
  if (!std::isfinite(a_) || !std::isfinite(beta_)) {
    throw std::invalid_argument("power term must be finite");
  }
  if (!(beta_ > -1.0)) throw std::invalid_argument("power term requires beta > -1");
}

double power(double t, double p) {
  if (t < 0.0) throw std::domain_error("power: negative base");
  if (t == 0.0) {
    if (p == 0.0) return 1.0;
    if (p > 0.0) return 0.0;
    return HUGE_VAL;
  }
  if (p == 0.0) return 1.0;
  return std::exp(p * std::log(t));
}

PowerTerm rl_derivative_term(const PowerTerm& term, double alpha) {
  double coef = term.a * gamma(term.beta + 1.0) * recip_gamma(term.beta - alpha + 1.0);
  if (coef == 0.0) return PowerTerm(0.0, 0.0);
  return PowerTerm(coef, term.beta - alpha);
}

double rl_derivative_power(const PowerTerm& term, double alpha, double t) {
  if (!(t >= 0.0)) throw std::domain_error("rl_derivative_power: t must be >= 0");
  double coef = term.a * gamma(term.beta + 1.0) * recip_gamma(term.beta - alpha + 1.0);
  if (coef == 0.0) return 0.0;
  double p = term.beta - alpha;
  if (t == 0.0 && p < 0.0) {
    throw DivergenceError("fractional derivative diverges at t = 0 (exponent " +
                          std::to_string(p) + ")");
  }
  return coef * power(t, p);
}

double rl_derivative_polysum(std::span<const PowerTerm> terms, double alpha, double t) {
  CompensatedSum sum;
  for (const auto& term : terms) sum.add(rl_derivative_power(term, alpha, t));
  return sum.value();
}

std::vector<PowerTerm> power_terms(const Polynomial& p) {
  std::vector<PowerTerm> out;
  auto c = p.coeffs();
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] != 0.0) out.emplace_back(c[j], static_cast<double>(j));
  }
  return out;
}

RlPolyDerivative::RlPolyDerivative(const Polynomial& f, double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("RlPolyDerivative: alpha must be finite and >= 0");
  }
  const auto& c = f.extended();
  const int s = alpha >= 1.0 ? static_cast<int>(std::floor(alpha - 1.0)) + 1 : 0;
  double fact = 1.0;
  for (int k = 2; k <= s; ++k) fact *= k;
  const double g_s = fact * recip_gamma(s + 1.0 - alpha);

  weights_.resize(c.size());
  DoubleDouble rho(1.0);
  double jfact = 1.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const int jj = static_cast<int>(j);
    if (jj > 0) jfact *= jj;
    if (jj < s) {
      weights_[j] = c[j] * (jfact * recip_gamma(jj + 1.0 - alpha));
    } else {
      if (jj > s) {
        DoubleDouble denom = dd::two_sum(static_cast<double>(jj), -alpha);
        rho = rho * static_cast<double>(jj) / denom;
      }
      weights_[j] = c[j] * rho * g_s;
    }
    if (jj < alpha && (weights_[j].hi != 0.0)) lowest_nonzero_is_negative_power_ = true;
  }
}

DoubleDouble RlPolyDerivative::scaled(double t) const {
  DoubleDouble acc = weights_.back();
  for (auto it = weights_.rbegin() + 1; it != weights_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double RlPolyDerivative::operator()(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("fractional derivative: t must be >= 0");
  if (t == 0.0) {
    if (lowest_nonzero_is_negative_power_) {
      throw DivergenceError("fractional derivative diverges at t = 0");
    }
    for (std::size_t j = 0; j < weights_.size(); ++j) {
      if (static_cast<double>(j) == alpha_) return weights_[j].value();
    }
    return 0.0;
  }
  return scaled(t).value() * power(t, -alpha_);
}

double gl_derivative_numeric(const std::function<double(double)>& f, double alpha, double t,
                             double h) {
  if (!(h > 0.0)) throw std::invalid_argument("gl_derivative_numeric: step must be > 0");
  if (!(t >= 0.0)) throw std::invalid_argument("gl_derivative_numeric: t must be >= 0");
  const auto n = static_cast<long long>(std::floor(t / h + 1e-9));
  CompensatedSum sum;
  double c = 1.0;
  for (long long k = 0; k <= n; ++k) {
    if (k > 0) c *= (static_cast<double>(k) - 1.0 - alpha) / static_cast<double>(k);
    sum.add(c * f(std::max(0.0, t - static_cast<double>(k) * h)));
  }
  return sum.value() / std::pow(h, alpha);
}

}  // namespace memfract
