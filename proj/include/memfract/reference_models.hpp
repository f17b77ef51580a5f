#pragma once

#include <cstdint>
#include <string>

#include "memfract/memfractance.hpp"
#include "memfract/sweep.hpp"

namespace memfract {

struct Waveform {
  enum class Shape { sine, triangle };

  Shape shape = Shape::sine;
  double amplitude = 1.0;  // V
  double period = 1.0;     // s
  int samples = 256;       // per period
  int cycles = 1;

  void validate() const;
  double operator()(double t) const;
  double duration() const { return period * cycles; }
};

Waveform::Shape parse_waveform_shape(const std::string& s);
std::string to_string(Waveform::Shape s);

/// Linear-drift memristor: M(w) = r_on w/d + r_off (1 - w/d),
/// dw/dt = mu r_on / d * i.
struct IdealMemristorParams {
  double r_on = 100.0;
  double r_off = 16000.0;
  double d = 1.0;
  double mu = 100.0;
  double w0 = 0.1;
  int substeps = 8;  // RK4 steps per output sample

  void validate() const;
  double memristance(double w) const { return r_on * w / d + r_off * (1.0 - w / d); }
};

/// Fixed-step RK4 with the state clamped to [0, d]. Samples t = k dt,
/// k = 0..samples*cycles. Throws when one step moves the state by more
/// than d/10.
SweepSeries simulate_ideal_memristor(const IdealMemristorParams& params, const Waveform& drive);

struct SyntheticDeviceSpec {
  FracOrderPair alphas{1.0, 1.0};
  double f_const = 1000.0;
  Waveform drive{Waveform::Shape::triangle, 1.0, 10.0, 256, 1};
  int charge_degree = 6;
  double charge_scale = 1e-6;  // C per V s of drive integral

  void validate() const;
};

/// Charge q is a degree-`charge_degree` polynomial (q(0) = 0) fitted to the
/// scaled drive integral over one period. The flux is
/// phi = F I^(alpha1 - alpha2) q, so D^alpha1 phi = F D^alpha2 q holds
/// exactly; v = phi' and i = q' are sampled at t_k = period (k+1)/samples.
/// `noise_fraction` adds seeded Gaussian noise with that fraction of
/// max|i| as standard deviation to the current.
SweepSeries synth_memfractor_sweep(const SyntheticDeviceSpec& spec, double noise_fraction = 0.0,
                                   std::uint64_t seed = 0);

/// The charge polynomial used by synth_memfractor_sweep.
Polynomial synth_charge_polynomial(const SyntheticDeviceSpec& spec);

/// Enclosed area of the I-V loop: shoelace area of each lobe between
/// voltage zero crossings, summed in absolute value.
double loop_area(const SweepSeries& series);

}  // namespace memfract
