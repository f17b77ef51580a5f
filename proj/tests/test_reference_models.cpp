#include <doctest.h>

#include <cmath>

#include "memfract/reference_models.hpp"

using namespace memfract;

TEST_CASE("ideal memristor stays within its resistance bounds") {
  IdealMemristorParams p;
  Waveform w;
  auto s = simulate_ideal_memristor(p, w);
  double energy = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (std::abs(s[k].i) > 1e-12) {
      double r = s[k].v / s[k].i;
      CHECK(r >= p.r_on * (1 - 1e-9));
      CHECK(r <= p.r_off * (1 + 1e-9));
    }
    if (k > 0) energy += 0.5 * (s[k].v * s[k].i + s[k - 1].v * s[k - 1].i) * (s[k].t - s[k - 1].t);
  }
  CHECK(energy >= 0.0);
}

TEST_CASE("ideal memristor loop is pinched") {
  auto s = simulate_ideal_memristor(IdealMemristorParams{}, Waveform{});
  for (const auto& r : s.records()) {
    if (std::abs(r.v) < 1e-12) CHECK(std::abs(r.i) < 1e-12);
  }
}

TEST_CASE("waveforms") {
  Waveform tri{Waveform::Shape::triangle, 2.0, 4.0, 16, 1};
  CHECK(tri(0.0) == 0.0);
  CHECK(tri(1.0) == doctest::Approx(2.0));
  CHECK(tri(3.0) == doctest::Approx(-2.0));
  CHECK(parse_waveform_shape("sine") == Waveform::Shape::sine);
  CHECK_THROWS(parse_waveform_shape("square"));
  CHECK_THROWS((Waveform{Waveform::Shape::sine, 1.0, -1.0, 16, 1}.validate()));
}

TEST_CASE("synthetic memfractor is seeded and validated") {
  SyntheticDeviceSpec spec;
  spec.alphas = FracOrderPair(1.5, 0.5);
  auto a = synth_memfractor_sweep(spec, 0.01, 42);
  auto b = synth_memfractor_sweep(spec, 0.01, 42);
  auto c = synth_memfractor_sweep(spec, 0.01, 43);
  CHECK(a.records() == b.records());
  CHECK_FALSE(a.records() == c.records());
  CHECK(a[0].t > 0.0);
  spec.f_const = 0.0;
  CHECK_THROWS_AS(synth_memfractor_sweep(spec), std::invalid_argument);
}

TEST_CASE("synthetic (1,1) device is resistive") {
  SyntheticDeviceSpec spec;
  auto s = synth_memfractor_sweep(spec);
  for (const auto& r : s.records()) {
    if (std::abs(r.i) > 1e-12) CHECK(r.v / r.i == doctest::Approx(spec.f_const).epsilon(1e-9));
  }
}
