#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "memfract/fractional.hpp"
#include "memfract/polynomial.hpp"
#include "memfract/roots.hpp"

namespace memfract {

/// Fractional orders (alpha1 on flux, alpha2 on charge), each in [0, 2].
class FracOrderPair {
 public:
  FracOrderPair(double alpha1, double alpha2);

  double alpha1() const { return alpha1_; }
  double alpha2() const { return alpha2_; }
  int m1() const { return order_ceiling(alpha1_); }
  int m2() const { return order_ceiling(alpha2_); }

  /// Smallest integer m with m - 1 < alpha <= m.
  static int order_ceiling(double alpha);

  bool operator==(const FracOrderPair&) const = default;

 private:
  double alpha1_;
  double alpha2_;
};

/// The denominator vanished (|D| below the underflow threshold) at t.
class SingularityError : public std::runtime_error {
 public:
  SingularityError(double t, const std::string& what) : std::runtime_error(what), t_(t) {}
  double t() const { return t_; }

 private:
  double t_;
};

/// t lies in the exclusion window around a piecewise breakpoint.
class ExcludedPointError : public std::runtime_error {
 public:
  ExcludedPointError(double t, const std::string& what) : std::runtime_error(what), t_(t) {}
  double t() const { return t_; }

 private:
  double t_;
};

/// One side of the memfractance quotient: D^alpha of a flux or charge
/// antiderivative, either a single polynomial or a 2-piece model.
///
/// For a piecewise antiderivative the derivative past the breakpoint keeps
/// the memory of the left piece: D^alpha IP1(t) plus the derivative (lower
/// limit T) of IP2 - IP1 expanded in powers of t - T.
class FractionalSide {
 public:
  static FractionalSide global(Polynomial antiderivative);
  static FractionalSide piecewise(PiecewisePolynomial antiderivative);

  bool is_piecewise() const { return piecewise_; }
  double breakpoint() const { return breakpoint_; }
  const Polynomial& left() const { return left_; }
  const Polynomial& delta() const { return delta_; }
  bool is_zero() const;

  /// D^alpha at fixed alpha, precomputed for repeated evaluation.
  class Evaluator {
   public:
    Evaluator(const FractionalSide& side, double alpha);
    double operator()(double t) const;

   private:
    RlPolyDerivative left_;
    std::optional<RlPolyDerivative> delta_;
    double breakpoint_;
  };

  Evaluator at(double alpha) const { return Evaluator(*this, alpha); }

 private:
  bool piecewise_ = false;
  double breakpoint_ = 0.0;
  Polynomial left_;
  Polynomial delta_;  // (IP2 - IP1)(T + s), as a polynomial in s
};

struct MemfractanceCurve {
  FracOrderPair alphas{0.0, 0.0};
  std::vector<double> t_grid;
  std::vector<double> values;           // NaN where excluded or singular
  std::vector<double> singular_points;  // denominator zeros
  std::vector<bool> removable;          // matched by a numerator zero within eps_t
  std::size_t excluded_count = 0;

  std::size_t unmatched_singularities() const;
};

class MemfractanceModel {
 public:
  static constexpr double kDefaultEpsDen = 1e-30;
  static constexpr double kDefaultDelta = 0.33;

  /// Flux and charge antiderivatives, evaluated on (0, t_end].
  static MemfractanceModel global(Polynomial flux, Polynomial charge, double t_end);
  /// Piecewise antiderivatives. Points in [T, T + 2 delta] are excluded.
  static MemfractanceModel piecewise(PiecewisePolynomial flux, PiecewisePolynomial charge,
                                     double delta = kDefaultDelta);

  const FractionalSide& flux() const { return flux_; }
  const FractionalSide& charge() const { return charge_; }
  double t_end() const { return t_end_; }
  bool is_piecewise() const { return flux_.is_piecewise(); }
  double eps_den() const { return eps_den_; }
  void set_eps_den(double eps);
  bool excluded(double t) const;
  std::optional<std::pair<double, double>> exclusion_window() const;

  /// F = D^alpha1 phi / D^alpha2 q at t. Throws ExcludedPointError or
  /// SingularityError.
  double eval(const FracOrderPair& alphas, double t) const;

  /// Uniform grid t_k = t_end k / n, k = 1..n.
  std::vector<double> default_grid(int n = 2048) const;

  MemfractanceCurve curve(const FracOrderPair& alphas, const std::vector<double>& t_grid,
                          double eps_t = 0.05) const;

  /// Numerator or denominator sampled on a grid (NaN at excluded points).
  std::vector<double> sample_numerator(double alpha1, const std::vector<double>& grid) const;
  std::vector<double> sample_denominator(double alpha2, const std::vector<double>& grid) const;
  std::vector<double> numerator_zeros(double alpha1, const std::vector<double>& grid) const;
  std::vector<double> denominator_zeros(double alpha2, const std::vector<double>& grid) const;

 private:
  MemfractanceModel(FractionalSide flux, FractionalSide charge, double t_end);

  FractionalSide flux_;
  FractionalSide charge_;
  double t_end_;
  double eps_den_ = kDefaultEpsDen;
  double delta_ = 0.0;
};

/// Closed forms on plain antiderivative polynomials.
double eval_global(const Polynomial& flux, const Polynomial& charge, const FracOrderPair& alphas,
                   double t, double eps_den = MemfractanceModel::kDefaultEpsDen);
double eval_piecewise(const PiecewisePolynomial& flux, const PiecewisePolynomial& charge,
                      const FracOrderPair& alphas, double t,
                      double delta = MemfractanceModel::kDefaultDelta,
                      double eps_den = MemfractanceModel::kDefaultEpsDen);

/// max - min over the non-excluded values.
double range_objective(const MemfractanceCurve& curve);
double range_objective(const std::vector<double>& values);

struct MatchedCouple {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double t_star = 0.0;  // the shared zero
};

/// For each alpha2 in `alpha2_grid` and each denominator zero t*, the alpha1
/// values (bracketed on `alpha1_grid`, then bisected) at which the numerator
/// vanishes at t* as well. Couples come back ordered by alpha2, then t*, then
/// alpha1.
std::vector<MatchedCouple> matched_zero_couples(const MemfractanceModel& model,
                                                const std::vector<double>& alpha1_grid,
                                                const std::vector<double>& alpha2_grid,
                                                const std::vector<double>& t_grid,
                                                double eps_t = 0.05, unsigned threads = 1);

/// Derivative of the charge antiderivative: D^(1-alpha2) applied to
/// D^alpha1 phi / F collapses to dq/dt exactly.
Polynomial reconstruct_current(const Polynomial& flux, const Polynomial& charge,
                               const FracOrderPair& alphas);

/// Numerical check of the identity above: evaluates D^(1-alpha2) D^alpha2 q
/// term by term with the power rule at t.
double reconstruct_current_numeric(const Polynomial& charge, const FracOrderPair& alphas, double t);

}  // namespace memfract
