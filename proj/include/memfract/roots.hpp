#pragma once

#include <functional>
#include <vector>

namespace memfract {

struct ZeroLocus {
  double alpha = 0.0;
  std::vector<double> zeros;  // ascending
};

/// Scans `grid_n` uniform samples of f over [lo, hi] for sign changes and
/// bisects each bracket down to 1e-9. Brackets whose refined value is not
/// small relative to the sampled scale (poles, jumps) are discarded, as are
/// samples where f is non-finite or throws.
ZeroLocus find_zeros(const std::function<double(double)>& f, double lo, double hi, int grid_n,
                     double alpha = 0.0);

/// Zeros from values already sampled on `grid` (ascending); `f` is only used
/// for refinement.
std::vector<double> refine_sampled_zeros(const std::function<double(double)>& f,
                                         const std::vector<double>& grid,
                                         const std::vector<double>& values);

}  // namespace memfract
