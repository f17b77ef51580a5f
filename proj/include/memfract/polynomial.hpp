#pragma once

#include <span>
#include <vector>

#include "memfract/double_double.hpp"

namespace memfract {

/// Monomial-basis polynomial: value = sum_j c_j t^j.
///
/// Coefficients are held in double-double. Values constructed from plain
/// doubles carry zero low parts; fitted polynomials keep the low parts so that
/// a degree-24 fit on [0, 171] still reproduces its samples.
class Polynomial {
 public:
  Polynomial();  // the zero polynomial, degree 0
  explicit Polynomial(std::vector<double> coeffs);
  Polynomial(std::span<const double> hi, std::span<const double> lo);
  static Polynomial from_extended(std::vector<DoubleDouble> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::vector<double> coeffs() const;
  std::vector<double> coeffs_lo() const;
  const std::vector<DoubleDouble>& extended() const { return coeffs_; }
  bool has_low_parts() const;
  bool is_zero() const;

  double operator()(double t) const { return evaluate_extended(t).value(); }
  DoubleDouble evaluate_extended(double t) const;

  Polynomial derivative() const;
  Polynomial scaled(double k) const;
  /// Re-expands about `origin`: returns q with q(s) = p(s + origin).
  Polynomial shifted(double origin) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);

 private:
  std::vector<DoubleDouble> coeffs_;
};

/// Antiderivative with zero constant term.
Polynomial integrate_polynomial(const Polynomial& p);

/// Two independent pieces: `left` on [0, T], `right` on (T, t_end].
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(Polynomial left, Polynomial right, double breakpoint, double t_end);

  const Polynomial& left() const { return left_; }
  const Polynomial& right() const { return right_; }
  double breakpoint() const { return breakpoint_; }
  double t_end() const { return t_end_; }

  double operator()(double t) const { return t <= breakpoint_ ? left_(t) : right_(t); }

 private:
  Polynomial left_;
  Polynomial right_;
  double breakpoint_;
  double t_end_;
};

/// Piecewise antiderivative taking each piece's integral from 0, i.e. the
/// right piece is not re-anchored at the breakpoint.
PiecewisePolynomial integrate_piecewise(const PiecewisePolynomial& p);

}  // namespace memfract
