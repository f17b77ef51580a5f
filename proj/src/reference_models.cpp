#include "memfract/reference_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "memfract/polyfit.hpp"
#include "memfract/special.hpp"

namespace memfract {

void Waveform::validate() const {
  if (!std::isfinite(amplitude) || amplitude < 0.0) {
    throw std::invalid_argument("drive amplitude must be finite and >= 0");
  }
  if (!std::isfinite(period) || !(period > 0.0)) throw std::invalid_argument("drive period must be > 0");
  if (samples < 4) throw std::invalid_argument("drive needs at least 4 samples per period");
  if (cycles < 1) throw std::invalid_argument("drive needs at least one cycle");
}

double Waveform::operator()(double t) const {
  double u = t / period - std::floor(t / period);
  switch (shape) {
    case Shape::sine:
      return amplitude * std::sin(2.0 * std::numbers::pi * t / period);
    case Shape::triangle:
      if (u < 0.25) return 4.0 * amplitude * u;
      if (u < 0.75) return amplitude * (2.0 - 4.0 * u);
      return 4.0 * amplitude * (u - 1.0);
  }
  return 0.0;
}

Waveform::Shape parse_waveform_shape(const std::string& s) {
  if (s == "sine") return Waveform::Shape::sine;
  if (s == "triangle") return Waveform::Shape::triangle;
  throw std::invalid_argument("unknown waveform shape '" + s + "'");
}

std::string to_string(Waveform::Shape s) {
  return s == Waveform::Shape::sine ? "sine" : "triangle";
}

void IdealMemristorParams::validate() const {
  if (!(r_on > 0.0) || !(r_off > r_on) || !std::isfinite(r_off)) {
    throw std::invalid_argument("ideal memristor requires 0 < r_on < r_off");
  }
  if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("ideal memristor requires d > 0");
  if (!std::isfinite(mu)) throw std::invalid_argument("ideal memristor mobility must be finite");
  if (!(w0 >= 0.0 && w0 <= d)) throw std::invalid_argument("ideal memristor requires 0 <= w0 <= d");
  if (substeps < 1) throw std::invalid_argument("substeps must be >= 1");
}

SweepSeries simulate_ideal_memristor(const IdealMemristorParams& p, const Waveform& drive) {
  p.validate();
  drive.validate();
  const int n = drive.samples * drive.cycles;
  const double dt = drive.period / drive.samples;
  const double h = dt / p.substeps;
  auto rate = [&](double t, double w) {
    double wc = std::clamp(w, 0.0, p.d);
    return p.mu * p.r_on / p.d * drive(t) / p.memristance(wc);
  };

  std::vector<SweepRecord> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  double w = p.w0;
  for (int k = 0; k <= n; ++k) {
    const double t = k * dt;
    const double v = drive(t);
    out.push_back({t, v, v / p.memristance(w)});
    if (k == n) break;
    for (int s = 0; s < p.substeps; ++s) {
      const double ts = t + s * h;
      double k1 = rate(ts, w);
      double k2 = rate(ts + 0.5 * h, w + 0.5 * h * k1);
      double k3 = rate(ts + 0.5 * h, w + 0.5 * h * k2);
      double k4 = rate(ts + h, w + h * k3);
      double dw = h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (std::abs(dw) > p.d / 10.0) {
        throw std::invalid_argument(
            "integration step too large: state moved more than d/10 in one step; use more "
            "samples or substeps");
      }
      w = std::clamp(w + dw, 0.0, p.d);
    }
  }
  SweepConfig cfg(-std::max(drive.amplitude, 1e-3), std::max(drive.amplitude, 1e-3),
                  std::max(drive.amplitude, 1e-3) * 4.0 / drive.samples);
  return SweepSeries("ideal_memristor", cfg, std::move(out));
}

void SyntheticDeviceSpec::validate() const {
  if (!std::isfinite(f_const) || f_const == 0.0) {
    throw std::invalid_argument("synthetic device needs a finite, nonzero F_const");
  }
  drive.validate();
  if (!(drive.amplitude > 0.0)) throw std::invalid_argument("synthetic drive amplitude must be > 0");
  if (drive.samples < 64) throw std::invalid_argument("synthetic device needs >= 64 samples");
  if (charge_degree < 1 || charge_degree > 12) {
    throw std::invalid_argument("charge_degree must be in [1, 12]");
  }
  if (!std::isfinite(charge_scale) || charge_scale == 0.0) {
    throw std::invalid_argument("charge_scale must be finite and nonzero");
  }
}

Polynomial synth_charge_polynomial(const SyntheticDeviceSpec& spec) {
  spec.validate();
  const Waveform& d = spec.drive;
  // Drive integral over one period, by composite Simpson on a fine grid.
  const int fine = 8 * d.samples;
  const double hs = d.period / fine;
  std::vector<double> t(fine + 1), q(fine + 1);
  q[0] = 0.0;
  for (int k = 0; k <= fine; ++k) t[k] = k * hs;
  for (int k = 1; k <= fine; ++k) {
    double a = t[k - 1];
    double b = t[k];
    q[k] = q[k - 1] + (b - a) / 6.0 * (d(a) + 4.0 * d(0.5 * (a + b)) + d(b));
  }
  for (double& x : q) x *= spec.charge_scale;
  auto fit = fit_polynomial(t, q, spec.charge_degree);
  auto c = fit.poly.extended();
  c[0] = DoubleDouble(0.0);
  return Polynomial::from_extended(std::move(c));
}

SweepSeries synth_memfractor_sweep(const SyntheticDeviceSpec& spec, double noise_fraction,
                                   std::uint64_t seed) {
  spec.validate();
  if (!(noise_fraction >= 0.0) || !std::isfinite(noise_fraction)) {
    throw std::invalid_argument("noise fraction must be >= 0");
  }
  const Polynomial q = synth_charge_polynomial(spec);
  const Polynomial i_poly = q.derivative();
  const double delta = spec.alphas.alpha1() - spec.alphas.alpha2();
  const auto qc = q.coeffs();

  // v = d/dt [F sum q_n n!/Gamma(n+delta+1) t^(n+delta)]
  //   = F sum q_n n!/Gamma(n+delta) t^(n+delta-1)
  std::vector<std::pair<double, double>> v_terms;
  double fact = 1.0;
  for (std::size_t n = 0; n < qc.size(); ++n) {
    if (n > 0) fact *= static_cast<double>(n);
    double coef = spec.f_const * qc[n] * fact * recip_gamma(static_cast<double>(n) + delta);
    if (coef != 0.0) v_terms.emplace_back(coef, static_cast<double>(n) + delta - 1.0);
  }

  const Waveform& d = spec.drive;
  std::vector<SweepRecord> recs;
  recs.reserve(static_cast<std::size_t>(d.samples));
  double i_max = 0.0;
  for (int k = 0; k < d.samples; ++k) {
    double t = d.period * (k + 1) / d.samples;
    CompensatedSum v;
    for (const auto& [c, p] : v_terms) v.add(c * std::pow(t, p));
    double i = i_poly(t);
    i_max = std::max(i_max, std::abs(i));
    recs.push_back({t, v.value(), i});
  }
  if (noise_fraction > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, noise_fraction * i_max);
    for (auto& r : recs) r.i += noise(rng);
  }
  double vmax = 0.0;
  for (const auto& r : recs) vmax = std::max(vmax, std::abs(r.v));
  vmax = std::max(vmax, 1e-12);
  SweepConfig cfg(-vmax, vmax, 2.0 * vmax / d.samples);
  return SweepSeries("synthetic", cfg, std::move(recs));
}

double loop_area(const SweepSeries& series) {
  const auto& r = series.records();
  double total = 0.0;
  std::size_t start = 0;
  auto lobe = [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    for (std::size_t k = a; k <= b; ++k) {
      const auto& p = r[k];
      const auto& q = r[k == b ? a : k + 1];
      s += p.v * q.i - q.v * p.i;
    }
    return std::abs(0.5 * s);
  };
  for (std::size_t k = 1; k < r.size(); ++k) {
    bool crossed = (r[k].v > 0.0 && r[k - 1].v < 0.0) || (r[k].v < 0.0 && r[k - 1].v > 0.0) ||
                   (r[k].v == 0.0 && k > start);
    if (crossed) {
      total += lobe(start, k);
      start = k;
    }
  }
  if (start + 1 < r.size()) total += lobe(start, r.size() - 1);
  return total;
}

}  // namespace memfract
