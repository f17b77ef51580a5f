#include "memfract/pipeline.hpp"

namespace memfract {

GlobalModelFit fit_global_model(const SweepSeries& series, int degree) {
  auto t = series.times();
  GlobalModelFit f{fit_polynomial(t, series.voltages(), degree),
                   fit_polynomial(t, series.currents(), degree), Polynomial(), Polynomial(),
                   t.back()};
  f.flux = integrate_polynomial(f.voltage.poly);
  f.charge = integrate_polynomial(f.current.poly);
  return f;
}

MemfractanceModel PiecewiseModelFit::model(double delta) const {
  return model_from_piecewise(voltage.poly, current.poly, delta);
}

PiecewiseModelFit fit_piecewise_model(const SweepSeries& series, int degree, double breakpoint) {
  auto t = series.times();
  return PiecewiseModelFit{fit_piecewise(t, series.voltages(), degree, breakpoint),
                           fit_piecewise(t, series.currents(), degree, breakpoint)};
}

MemfractanceModel model_from_global(const Polynomial& v, const Polynomial& i, double t_end) {
  return MemfractanceModel::global(integrate_polynomial(v), integrate_polynomial(i), t_end);
}

MemfractanceModel model_from_piecewise(const PiecewisePolynomial& v, const PiecewisePolynomial& i,
                                       double delta) {
  return MemfractanceModel::piecewise(integrate_piecewise(v), integrate_piecewise(i), delta);
}

}  // namespace memfract
