#include "memfract/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace memfract {

Polynomial::Polynomial() : coeffs_{DoubleDouble(0.0)} {}

Polynomial::Polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  coeffs_.reserve(coeffs.size());
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw std::invalid_argument("polynomial coefficients must be finite");
    coeffs_.emplace_back(c);
  }
}

Polynomial::Polynomial(std::span<const double> hi, std::span<const double> lo) {
  if (!lo.empty() && lo.size() != hi.size()) {
    throw std::invalid_argument("polynomial: low parts must match coefficient count");
  }
  for (std::size_t j = 0; j < hi.size(); ++j) {
    double l = lo.empty() ? 0.0 : lo[j];
    if (!std::isfinite(hi[j]) || !std::isfinite(l)) {
      throw std::invalid_argument("polynomial coefficients must be finite");
    }
    coeffs_.push_back(dd::two_sum(hi[j], l));
  }
  if (coeffs_.empty()) coeffs_.emplace_back(0.0);
}

Polynomial Polynomial::from_extended(std::vector<DoubleDouble> coeffs) {
  Polynomial p;
  if (coeffs.empty()) return p;
  for (const auto& c : coeffs) {
    if (!std::isfinite(c.hi) || !std::isfinite(c.lo)) {
      throw std::invalid_argument("polynomial coefficients must be finite");
    }
  }
  p.coeffs_ = std::move(coeffs);
  return p;
}

std::vector<double> Polynomial::coeffs() const {
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.hi);
  return out;
}

std::vector<double> Polynomial::coeffs_lo() const {
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.lo);
  return out;
}

bool Polynomial::has_low_parts() const {
  return std::any_of(coeffs_.begin(), coeffs_.end(), [](const DoubleDouble& c) { return c.lo != 0.0; });
}

bool Polynomial::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const DoubleDouble& c) { return c.hi == 0.0 && c.lo == 0.0; });
}

DoubleDouble Polynomial::evaluate_extended(double t) const {
  DoubleDouble acc = coeffs_.back();
  for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) {
    acc = acc * t + *it;
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() == 1) return Polynomial();
  std::vector<DoubleDouble> out;
  out.reserve(coeffs_.size() - 1);
  for (std::size_t j = 1; j < coeffs_.size(); ++j) {
    out.push_back(coeffs_[j] * static_cast<double>(j));
  }
  return from_extended(std::move(out));
}

Polynomial Polynomial::scaled(double k) const {
  std::vector<DoubleDouble> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c * k);
  return from_extended(std::move(out));
}

Polynomial Polynomial::shifted(double origin) const {
  // Taylor shift by repeated synthetic division.
  std::vector<DoubleDouble> c = coeffs_;
  const std::size_t n = c.size();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    for (std::size_t j = n - 1; j > k; --j) {
      c[j - 1] = c[j - 1] + c[j] * origin;
    }
  }
  return from_extended(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<DoubleDouble> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t j = 0; j < a.coeffs_.size(); ++j) out[j] = out[j] + a.coeffs_[j];
  for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[j] = out[j] + b.coeffs_[j];
  return Polynomial::from_extended(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + b.scaled(-1.0); }

Polynomial integrate_polynomial(const Polynomial& p) {
  const auto& c = p.extended();
  std::vector<DoubleDouble> out(c.size() + 1);
  for (std::size_t j = 0; j < c.size(); ++j) {
    out[j + 1] = c[j] / DoubleDouble(static_cast<double>(j + 1));
  }
  return Polynomial::from_extended(std::move(out));
}

PiecewisePolynomial::PiecewisePolynomial(Polynomial left, Polynomial right, double breakpoint,
                                         double t_end)
    : left_(std::move(left)), right_(std::move(right)), breakpoint_(breakpoint), t_end_(t_end) {
  if (!std::isfinite(breakpoint) || !std::isfinite(t_end) || !(breakpoint > 0.0) ||
      !(breakpoint < t_end)) {
    throw std::invalid_argument("piecewise polynomial requires 0 < T < t_end");
  }
}

PiecewisePolynomial integrate_piecewise(const PiecewisePolynomial& p) {
  return PiecewisePolynomial(integrate_polynomial(p.left()), integrate_polynomial(p.right()),
                             p.breakpoint(), p.t_end());
}

}  // namespace memfract
