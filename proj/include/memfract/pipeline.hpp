#pragma once

#include "memfract/memfractance.hpp"
#include "memfract/polyfit.hpp"
#include "memfract/sweep.hpp"

namespace memfract {

/// v and i fitted with one polynomial each, plus their antiderivatives.
struct GlobalModelFit {
  PolyFit voltage;
  PolyFit current;
  Polynomial flux;
  Polynomial charge;
  double t_end = 0.0;

  MemfractanceModel model() const { return MemfractanceModel::global(flux, charge, t_end); }
};

GlobalModelFit fit_global_model(const SweepSeries& series, int degree);

struct PiecewiseModelFit {
  PiecewiseFit voltage;
  PiecewiseFit current;

  MemfractanceModel model(double delta = MemfractanceModel::kDefaultDelta) const;
};

PiecewiseModelFit fit_piecewise_model(const SweepSeries& series, int degree, double breakpoint);

/// Model from voltage and current polynomials (not antiderivatives).
MemfractanceModel model_from_global(const Polynomial& v, const Polynomial& i, double t_end);
MemfractanceModel model_from_piecewise(const PiecewisePolynomial& v, const PiecewisePolynomial& i,
                                       double delta = MemfractanceModel::kDefaultDelta);

}  // namespace memfract
