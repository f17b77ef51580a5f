#include "memfract/polyfit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace memfract {

namespace {

constexpr int kMaxDegree = 30;

// Coefficients (ascending in x) of Chebyshev polynomials T_0..T_n.
std::vector<std::vector<double>> chebyshev_monomials(int n) {
  std::vector<std::vector<double>> T(n + 1);
  T[0] = {1.0};
  if (n >= 1) T[1] = {0.0, 1.0};
  for (int k = 2; k <= n; ++k) {
    T[k].assign(k + 1, 0.0);
    for (int j = 0; j < k; ++j) T[k][j + 1] += 2.0 * T[k - 1][j];
    for (int j = 0; j < k - 1; ++j) T[k][j] -= T[k - 2][j];
  }
  return T;
}

}  // namespace

FitStats FitStats::from_sums(double sse, double ssr) {
  FitStats s;
  s.sse = sse;
  s.ssr = ssr;
  s.sst = sse + ssr;
  s.r_squared = s.sst > 0.0 ? ssr / s.sst : 1.0;
  return s;
}

FitStats goodness_of_fit(std::span<const double> y, std::span<const double> y_hat) {
  if (y.size() != y_hat.size()) throw std::invalid_argument("goodness_of_fit: length mismatch");
  if (y.size() < 2) throw std::invalid_argument("goodness_of_fit: need at least 2 values");
  CompensatedSum mean_sum;
  for (double v : y) mean_sum.add(v);
  const double mean = mean_sum.value() / static_cast<double>(y.size());
  CompensatedSum sse;
  CompensatedSum ssr;
  for (std::size_t k = 0; k < y.size(); ++k) {
    double e = y[k] - y_hat[k];
    double r = y_hat[k] - mean;
    sse.add(e * e);
    ssr.add(r * r);
  }
  return FitStats::from_sums(sse.value(), ssr.value());
}

PolyFit fit_polynomial(std::span<const double> t, std::span<const double> y, int degree) {
  if (t.size() != y.size()) throw std::invalid_argument("fit_polynomial: length mismatch");
  if (degree < 0 || degree > kMaxDegree) {
    throw std::invalid_argument("fit_polynomial: degree must be in [0, 30], got " +
                                std::to_string(degree));
  }
  const std::size_t n = t.size();
  if (n < static_cast<std::size_t>(degree) + 1) {
    throw std::invalid_argument("fit_polynomial: need at least degree+1 samples");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(t[k]) || !std::isfinite(y[k])) {
      throw std::invalid_argument("fit_polynomial: non-finite sample");
    }
  }
  std::vector<double> sorted(t.begin(), t.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("fit_polynomial: duplicate t values make the system rank-deficient");
  }

  const double t_lo = sorted.front();
  const double t_hi = sorted.back();
  const double center = degree == 0 ? 0.0 : 0.5 * (t_lo + t_hi);
  const double half = degree == 0 ? 1.0 : 0.5 * (t_hi - t_lo);

  Eigen::MatrixXd A(n, degree + 1);
  Eigen::VectorXd b(n);
  for (std::size_t k = 0; k < n; ++k) {
    double x = (t[k] - center) / half;
    A(k, 0) = 1.0;
    if (degree >= 1) A(k, 1) = x;
    for (int j = 2; j <= degree; ++j) A(k, j) = 2.0 * x * A(k, j - 1) - A(k, j - 2);
    b(k) = y[k];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < degree + 1) throw std::invalid_argument("fit_polynomial: rank-deficient system");
  Eigen::VectorXd cheb = qr.solve(b);

  // Chebyshev -> monomials in x.
  auto T = chebyshev_monomials(degree);
  std::vector<DoubleDouble> px(degree + 1);
  for (int k = 0; k <= degree; ++k) {
    for (int j = 0; j <= k; ++j) {
      if (T[k][j] != 0.0) px[j] = px[j] + dd::two_prod(cheb(k), T[k][j]);
    }
  }

  // Compose with x = u t + w, u = 1/half, w = -center/half, by Horner.
  const DoubleDouble u = DoubleDouble(1.0) / DoubleDouble(half);
  const DoubleDouble w = -(DoubleDouble(center) / DoubleDouble(half));
  std::vector<DoubleDouble> out{px[degree]};
  for (int m = degree - 1; m >= 0; --m) {
    std::vector<DoubleDouble> next(out.size() + 1);
    for (std::size_t j = 0; j < out.size(); ++j) {
      next[j + 1] = next[j + 1] + out[j] * u;
      next[j] = next[j] + out[j] * w;
    }
    next[0] = next[0] + px[m];
    out = std::move(next);
  }

  Polynomial poly = Polynomial::from_extended(std::move(out));
  std::vector<double> y_hat(n);
  for (std::size_t k = 0; k < n; ++k) y_hat[k] = poly(t[k]);
  return PolyFit{std::move(poly), goodness_of_fit(y, y_hat)};
}

PiecewiseFit fit_piecewise(std::span<const double> t, std::span<const double> y, int degree,
                           double breakpoint) {
  if (t.size() != y.size()) throw std::invalid_argument("fit_piecewise: length mismatch");
  if (t.empty()) throw std::invalid_argument("fit_piecewise: no samples");
  auto [mn, mx] = std::minmax_element(t.begin(), t.end());
  if (!std::isfinite(breakpoint) || !(breakpoint > *mn) || !(breakpoint < *mx)) {
    throw std::invalid_argument("fit_piecewise: breakpoint outside the sample range");
  }
  std::vector<double> tl, yl, tr, yr;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] <= breakpoint) {
      tl.push_back(t[k]);
      yl.push_back(y[k]);
    } else {
      tr.push_back(t[k]);
      yr.push_back(y[k]);
    }
  }
  const auto need = static_cast<std::size_t>(std::max(degree, 0)) + 1;
  if (tl.size() < need || tr.size() < need) {
    throw std::invalid_argument("fit_piecewise: each piece needs at least degree+1 samples");
  }
  PolyFit left = fit_polynomial(tl, yl, degree);
  PolyFit right = fit_polynomial(tr, yr, degree);
  return PiecewiseFit{PiecewisePolynomial(left.poly, right.poly, breakpoint, *mx), left.stats,
                      right.stats};
}

double estimate_breakpoint(const SweepSeries& series) {
  const auto& r = series.records();
  auto by_v = [](const SweepRecord& a, const SweepRecord& b) { return a.v < b.v; };
  auto hi = std::max_element(r.begin(), r.end(), by_v);
  if (hi != r.begin() && hi != r.end() - 1) return hi->t;
  auto lo = std::min_element(r.begin(), r.end(), by_v);
  if (lo != r.begin() && lo != r.end() - 1) return lo->t;
  throw std::invalid_argument("estimate_breakpoint: run '" + series.run_id() +
                              "' has no interior voltage extremum");
}

double estimate_breakpoint(std::span<const SweepSeries> runs) {
  if (runs.empty()) throw std::invalid_argument("estimate_breakpoint: no runs");
  double sum = 0.0;
  for (const auto& run : runs) sum += estimate_breakpoint(run);
  return sum / static_cast<double>(runs.size());
}

}  // namespace memfract
