#pragma once

#include <span>
#include <utility>
#include <vector>

#include "memfract/polynomial.hpp"
#include "memfract/sweep.hpp"

namespace memfract {

struct FitStats {
  double sse = 0.0;
  double ssr = 0.0;
  double sst = 0.0;
  double r_squared = 0.0;

  /// sst = sse + ssr, r^2 = ssr / sst (1 when sst is 0).
  static FitStats from_sums(double sse, double ssr);
};

FitStats goodness_of_fit(std::span<const double> y, std::span<const double> y_hat);

struct PolyFit {
  Polynomial poly;
  FitStats stats;
};

/// Least-squares polynomial of the given degree (0..30) through (t, y).
///
/// The system is solved in a Chebyshev basis on the data interval mapped to
/// [-1, 1]; the result is converted to raw monomial coefficients in
/// double-double.
PolyFit fit_polynomial(std::span<const double> t, std::span<const double> y, int degree);

struct PiecewiseFit {
  PiecewisePolynomial poly;
  FitStats left;
  FitStats right;
};

/// Independent fits on [t_0, T] and (T, t_end]. A sample exactly at T
/// belongs to the left piece.
PiecewiseFit fit_piecewise(std::span<const double> t, std::span<const double> y, int degree,
                           double breakpoint);

/// Time of the sweep vertex: the interior maximum of v, or failing that the
/// interior minimum. Several runs give the mean of their vertices.
double estimate_breakpoint(const SweepSeries& series);
double estimate_breakpoint(std::span<const SweepSeries> runs);

}  // namespace memfract
