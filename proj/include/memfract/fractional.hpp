#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "memfract/double_double.hpp"
#include "memfract/polynomial.hpp"

namespace memfract {

class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// a * t^beta with beta > -1.
struct PowerTerm {
  double a = 0.0;
  double beta = 0.0;

  PowerTerm() = default;
  PowerTerm(double a_, double beta_);
};

/// Riemann-Liouville derivative (lower limit 0) of a t^beta, as a power term.
/// Negative alpha gives the fractional integral of order -alpha.
PowerTerm rl_derivative_term(const PowerTerm& term, double alpha);

/// a Gamma(beta+1) / Gamma(beta-alpha+1) t^(beta-alpha).
double rl_derivative_power(const PowerTerm& term, double alpha, double t);

/// Termwise rl_derivative_power with compensated summation.
double rl_derivative_polysum(std::span<const PowerTerm> terms, double alpha, double t);

/// Power terms c_j t^j of a monomial polynomial (zero coefficients skipped).
std::vector<PowerTerm> power_terms(const Polynomial& p);

/// t^p for t >= 0 with the conventions 0^0 = 1 and 0^p = 0 for p > 0.
double power(double t, double p);

/// D^alpha of a fixed polynomial, with per-order weights precomputed.
///
/// Evaluated as t^-alpha [ sum_{j<s} f_j j!/Gamma(j+1-alpha) t^j
///                          + g_s sum_{j>=s} f_j rho_j t^j ]
/// where rho_j = prod_{k=s+1..j} k/(k-alpha) and the bracket is accumulated
/// in double-double. This keeps degree-25 sums on [0, 171] accurate where
/// the termwise sum cancels by twelve orders of magnitude.
class RlPolyDerivative {
 public:
  RlPolyDerivative(const Polynomial& f, double alpha);

  double alpha() const { return alpha_; }
  double operator()(double t) const;
  /// The bracket alone, i.e. t^alpha * D^alpha f(t).
  DoubleDouble scaled(double t) const;

 private:
  double alpha_;
  std::vector<DoubleDouble> weights_;  // coefficient of t^j inside the bracket
  bool lowest_nonzero_is_negative_power_ = false;
};

/// Grunwald-Letnikov approximation with uniform step h (default 1e-4).
double gl_derivative_numeric(const std::function<double(double)>& f, double alpha, double t,
                             double h = 1e-4);

}  // namespace memfract
