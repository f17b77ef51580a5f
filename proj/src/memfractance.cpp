#include "memfract/memfractance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "memfract/parallel.hpp"

namespace memfract {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool has_zero_within(const std::vector<double>& zeros, double t, double eps) {
  auto it = std::lower_bound(zeros.begin(), zeros.end(), t - eps);
  return it != zeros.end() && *it <= t + eps;
}

}  // namespace

FracOrderPair::FracOrderPair(double alpha1, double alpha2) : alpha1_(alpha1), alpha2_(alpha2) {
  auto ok = [](double a) { return std::isfinite(a) && a >= 0.0 && a <= 2.0; };
  if (!ok(alpha1) || !ok(alpha2)) {
    std::ostringstream msg;
    msg << "fractional orders must lie in [0, 2], got (" << alpha1 << ", " << alpha2 << ")";
    throw std::invalid_argument(msg.str());
  }
}

int FracOrderPair::order_ceiling(double alpha) {
  return alpha <= 0.0 ? 0 : static_cast<int>(std::ceil(alpha));
}

FractionalSide FractionalSide::global(Polynomial antiderivative) {
  FractionalSide s;
  s.left_ = std::move(antiderivative);
  return s;
}

FractionalSide FractionalSide::piecewise(PiecewisePolynomial antiderivative) {
  FractionalSide s;
  s.piecewise_ = true;
  s.breakpoint_ = antiderivative.breakpoint();
  s.left_ = antiderivative.left();
  s.delta_ = (antiderivative.right() - antiderivative.left()).shifted(s.breakpoint_);
  return s;
}

bool FractionalSide::is_zero() const { return left_.is_zero() && delta_.is_zero(); }

FractionalSide::Evaluator::Evaluator(const FractionalSide& side, double alpha)
    : left_(side.left_, alpha), breakpoint_(side.breakpoint_) {
  if (side.piecewise_) delta_.emplace(side.delta_, alpha);
}

double FractionalSide::Evaluator::operator()(double t) const {
  double v = left_(t);
  if (delta_ && t > breakpoint_) v += (*delta_)(t - breakpoint_);
  return v;
}

std::size_t MemfractanceCurve::unmatched_singularities() const {
  return static_cast<std::size_t>(std::count(removable.begin(), removable.end(), false));
}

MemfractanceModel::MemfractanceModel(FractionalSide flux, FractionalSide charge, double t_end)
    : flux_(std::move(flux)), charge_(std::move(charge)), t_end_(t_end) {
  if (!std::isfinite(t_end) || !(t_end > 0.0)) {
    throw std::invalid_argument("memfractance model needs t_end > 0");
  }
}

MemfractanceModel MemfractanceModel::global(Polynomial flux, Polynomial charge, double t_end) {
  return MemfractanceModel(FractionalSide::global(std::move(flux)),
                           FractionalSide::global(std::move(charge)), t_end);
}

MemfractanceModel MemfractanceModel::piecewise(PiecewisePolynomial flux,
                                               PiecewisePolynomial charge, double delta) {
  if (flux.breakpoint() != charge.breakpoint()) {
    throw std::invalid_argument("flux and charge pieces must share the breakpoint");
  }
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("exclusion half-width must be >= 0");
  }
  double t_end = std::min(flux.t_end(), charge.t_end());
  MemfractanceModel m(FractionalSide::piecewise(std::move(flux)),
                      FractionalSide::piecewise(std::move(charge)), t_end);
  m.delta_ = delta;
  return m;
}

void MemfractanceModel::set_eps_den(double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("eps_den must be >= 0");
  eps_den_ = eps;
}

std::optional<std::pair<double, double>> MemfractanceModel::exclusion_window() const {
  if (!is_piecewise()) return std::nullopt;
  double T = flux_.breakpoint();
  return std::make_pair(T, T + 2.0 * delta_);
}

bool MemfractanceModel::excluded(double t) const {
  auto w = exclusion_window();
  return w && t >= w->first && t <= w->second;
}

double MemfractanceModel::eval(const FracOrderPair& alphas, double t) const {
  if (!(t > 0.0)) throw std::domain_error("memfractance is evaluated for t > 0");
  if (excluded(t)) {
    std::ostringstream msg;
    msg << "t = " << t << " lies in the breakpoint exclusion window";
    throw ExcludedPointError(t, msg.str());
  }
  double num = flux_.at(alphas.alpha1())(t);
  double den = charge_.at(alphas.alpha2())(t);
  if (!(std::abs(den) >= eps_den_)) {
    std::ostringstream msg;
    msg << "denominator vanishes at t = " << t;
    throw SingularityError(t, msg.str());
  }
  return num / den;
}

std::vector<double> MemfractanceModel::default_grid(int n) const {
  if (n < 2) throw std::invalid_argument("t-grid needs at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) g[k - 1] = t_end_ * k / n;
  return g;
}

std::vector<double> MemfractanceModel::sample_numerator(double alpha1,
                                                        const std::vector<double>& grid) const {
  auto f = flux_.at(alpha1);
  std::vector<double> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) out[k] = excluded(grid[k]) ? kNaN : f(grid[k]);
  return out;
}

std::vector<double> MemfractanceModel::sample_denominator(double alpha2,
                                                          const std::vector<double>& grid) const {
  auto f = charge_.at(alpha2);
  std::vector<double> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) out[k] = excluded(grid[k]) ? kNaN : f(grid[k]);
  return out;
}

std::vector<double> MemfractanceModel::numerator_zeros(double alpha1,
                                                       const std::vector<double>& grid) const {
  auto f = flux_.at(alpha1);
  return refine_sampled_zeros([&](double t) { return excluded(t) ? kNaN : f(t); }, grid,
                              sample_numerator(alpha1, grid));
}

std::vector<double> MemfractanceModel::denominator_zeros(double alpha2,
                                                         const std::vector<double>& grid) const {
  auto f = charge_.at(alpha2);
  return refine_sampled_zeros([&](double t) { return excluded(t) ? kNaN : f(t); }, grid,
                              sample_denominator(alpha2, grid));
}

MemfractanceCurve MemfractanceModel::curve(const FracOrderPair& alphas,
                                           const std::vector<double>& t_grid, double eps_t) const {
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (!(t_grid[k] > 0.0) || (k > 0 && !(t_grid[k] > t_grid[k - 1]))) {
      throw std::invalid_argument("curve grid must be positive and strictly increasing");
    }
  }
  MemfractanceCurve c;
  c.alphas = alphas;
  c.t_grid = t_grid;
  auto num = sample_numerator(alphas.alpha1(), t_grid);
  auto den = sample_denominator(alphas.alpha2(), t_grid);
  c.values.resize(t_grid.size());
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (std::isnan(den[k])) {
      c.values[k] = kNaN;
      ++c.excluded_count;
    } else if (!(std::abs(den[k]) >= eps_den_)) {
      c.values[k] = kNaN;
    } else {
      c.values[k] = num[k] / den[k];
    }
  }
  c.singular_points = denominator_zeros(alphas.alpha2(), t_grid);
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (!std::isnan(den[k]) && !(std::abs(den[k]) >= eps_den_)) {
      c.singular_points.push_back(t_grid[k]);
    }
  }
  std::sort(c.singular_points.begin(), c.singular_points.end());
  c.singular_points.erase(std::unique(c.singular_points.begin(), c.singular_points.end()),
                          c.singular_points.end());
  auto nz = numerator_zeros(alphas.alpha1(), t_grid);
  for (double z : c.singular_points) c.removable.push_back(has_zero_within(nz, z, eps_t));
  return c;
}

double eval_global(const Polynomial& flux, const Polynomial& charge, const FracOrderPair& alphas,
                   double t, double eps_den) {
  auto m = MemfractanceModel::global(flux, charge, std::max(t, 1.0));
  m.set_eps_den(eps_den);
  return m.eval(alphas, t);
}

double eval_piecewise(const PiecewisePolynomial& flux, const PiecewisePolynomial& charge,
                      const FracOrderPair& alphas, double t, double delta, double eps_den) {
  auto m = MemfractanceModel::piecewise(flux, charge, delta);
  m.set_eps_den(eps_den);
  return m.eval(alphas, t);
}

double range_objective(const std::vector<double>& values) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::size_t n = 0;
  for (double v : values) {
    if (std::isnan(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    ++n;
  }
  if (n < 2) throw std::invalid_argument("range objective needs at least 2 non-excluded values");
  return hi - lo;
}

double range_objective(const MemfractanceCurve& curve) { return range_objective(curve.values); }

std::vector<MatchedCouple> matched_zero_couples(const MemfractanceModel& model,
                                                const std::vector<double>& alpha1_grid,
                                                const std::vector<double>& alpha2_grid,
                                                const std::vector<double>& t_grid, double eps_t,
                                                unsigned threads) {
  if (!(eps_t > 0.0)) throw std::invalid_argument("eps_t must be > 0");
  if (alpha1_grid.empty()) return {};
  std::vector<std::vector<MatchedCouple>> per_alpha2(alpha2_grid.size());

  parallel_for(alpha2_grid.size(), threads, [&](std::size_t j) {
    const double a2 = alpha2_grid[j];
    auto zeros = model.denominator_zeros(a2, t_grid);
    auto& out = per_alpha2[j];
    for (double z : zeros) {
      auto n_at = [&](double a1) { return model.flux().at(a1)(z); };
      std::vector<double> vals(alpha1_grid.size());
      for (std::size_t i = 0; i < alpha1_grid.size(); ++i) vals[i] = n_at(alpha1_grid[i]);
      std::vector<double> roots;
      for (std::size_t i = 0; i < alpha1_grid.size(); ++i) {
        if (vals[i] == 0.0) {
          roots.push_back(alpha1_grid[i]);
          continue;
        }
        if (i + 1 == alpha1_grid.size() || vals[i + 1] == 0.0) continue;
        if (!std::isfinite(vals[i]) || !std::isfinite(vals[i + 1])) continue;
        if ((vals[i] > 0.0) == (vals[i + 1] > 0.0)) continue;
        double a = alpha1_grid[i];
        double b = alpha1_grid[i + 1];
        double fa = vals[i];
        while (b - a > 1e-12) {
          double m = 0.5 * (a + b);
          if (m <= a || m >= b) break;
          double fm = n_at(m);
          if (fm == 0.0) {
            a = b = m;
            break;
          }
          if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
          } else {
            b = m;
          }
        }
        roots.push_back(0.5 * (a + b));
      }
      for (double a1 : roots) {
        auto nz = model.numerator_zeros(a1, t_grid);
        if (has_zero_within(nz, z, eps_t)) out.push_back({a1, a2, z});
      }
    }
  });

  std::vector<MatchedCouple> all;
  for (auto& v : per_alpha2) all.insert(all.end(), v.begin(), v.end());
  return all;
}

Polynomial reconstruct_current(const Polynomial& flux, const Polynomial& charge,
                               const FracOrderPair& alphas) {
  (void)flux;
  (void)alphas;
  return charge.derivative();
}

double reconstruct_current_numeric(const Polynomial& charge, const FracOrderPair& alphas,
                                   double t) {
  CompensatedSum sum;
  for (const auto& term : power_terms(charge)) {
    PowerTerm d = rl_derivative_term(term, alphas.alpha2());
    if (d.a == 0.0) continue;
    sum.add(rl_derivative_power(d, 1.0 - alphas.alpha2(), t));
  }
  return sum.value();
}

}  // namespace memfract
