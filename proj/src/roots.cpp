#include "memfract/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace memfract {

namespace {

constexpr double kBracketWidth = 1e-9;
constexpr double kResidualTol = 1e-6;

double safe_eval(const std::function<double(double)>& f, double t) {
  try {
    return f(t);
  } catch (const std::exception&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

std::vector<double> refine_sampled_zeros(const std::function<double(double)>& f,
                                         const std::vector<double>& grid,
                                         const std::vector<double>& values) {
  if (grid.size() != values.size()) throw std::invalid_argument("grid/value size mismatch");
  double scale = 0.0;
  for (double y : values) {
    if (std::isfinite(y)) scale = std::max(scale, std::abs(y));
  }
  std::vector<double> zeros;
  if (scale == 0.0) return zeros;
  const double tol = kResidualTol * scale;

  for (std::size_t k = 0; k < grid.size(); ++k) {
    double ya = values[k];
    if (!std::isfinite(ya)) continue;
    if (ya == 0.0) {
      if (zeros.empty() || zeros.back() < grid[k]) zeros.push_back(grid[k]);
      continue;
    }
    if (k + 1 == grid.size()) break;
    double yb = values[k + 1];
    if (!std::isfinite(yb) || yb == 0.0 || (ya > 0.0) == (yb > 0.0)) continue;

    double a = grid[k];
    double b = grid[k + 1];
    double fa = ya;
    double fb = yb;
    bool ok = true;
    while (b - a > kBracketWidth) {
      double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      double fm = safe_eval(f, m);
      if (!std::isfinite(fm)) {
        ok = false;
        break;
      }
      if (fm == 0.0) {
        a = b = m;
        fa = fb = 0.0;
        break;
      }
      if ((fm > 0.0) == (fa > 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
        fb = fm;
      }
    }
    if (!ok) continue;
    double root = 0.5 * (a + b);
    double fr = safe_eval(f, root);
    if (!std::isfinite(fr) || std::abs(fr) > tol) continue;
    if (std::min(std::abs(fa), std::abs(fb)) > tol) continue;
    if (zeros.empty() || zeros.back() < root) zeros.push_back(root);
  }
  return zeros;
}

ZeroLocus find_zeros(const std::function<double(double)>& f, double lo, double hi, int grid_n,
                     double alpha) {
  if (grid_n < 16) throw std::invalid_argument("find_zeros: grid_n must be >= 16");
  if (!(lo < hi)) throw std::invalid_argument("find_zeros: empty interval");
  std::vector<double> grid(static_cast<std::size_t>(grid_n));
  std::vector<double> values(grid.size());
  for (int k = 0; k < grid_n; ++k) {
    grid[k] = k + 1 == grid_n ? hi : lo + (hi - lo) * k / (grid_n - 1);
    values[k] = safe_eval(f, grid[k]);
  }
  return ZeroLocus{alpha, refine_sampled_zeros(f, grid, values)};
}

}  // namespace memfract
