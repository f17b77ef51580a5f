#include <doctest.h>

#include <cmath>
#include <random>

#include "memfract/spikes.hpp"

using namespace memfract;

namespace {

SweepSeries noisy_sweep(std::uint64_t seed, double offset = 0.0, double scale = 1.0,
                        std::vector<std::size_t> impulses = {}) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.05e-9);
  std::vector<SweepRecord> r;
  for (int k = 0; k < 400; ++k) {
    double t = 0.5 * k;
    double v = k < 200 ? -1 + k / 100.0 : 3 - k / 100.0;
    double i = 1e-8 * std::sin(t / 30.0) + noise(rng);
    r.push_back({t, v, offset + scale * i});
  }
  for (std::size_t k : impulses) r[k].i += scale * 5e-9;
  return SweepSeries("s", SweepConfig(-1, 1, 0.01), r);
}

std::vector<std::size_t> indices(const std::vector<SpikeEvent>& s) {
  std::vector<std::size_t> out;
  for (const auto& e : s) out.push_back(e.index);
  return out;
}

}  // namespace

TEST_CASE("injected impulses are found") {
  std::vector<std::size_t> at{40, 111, 190, 260, 333};
  auto spikes = detect_spikes(noisy_sweep(1, 0.0, 1.0, at), SpikeConfig{});
  CHECK(indices(spikes) == at);
}

TEST_CASE("translation equivariance and scaling") {
  std::vector<std::size_t> at{50, 150, 250};
  auto base = detect_spikes(noisy_sweep(2, 0.0, 1.0, at), SpikeConfig{});
  auto shifted = detect_spikes(noisy_sweep(2, 3e-7, 1.0, at), SpikeConfig{});
  CHECK(indices(base) == indices(shifted));
  SpikeConfig scaled_cfg;
  scaled_cfg.floor *= 10.0;
  auto scaled = detect_spikes(noisy_sweep(2, 0.0, 10.0, at), scaled_cfg);
  REQUIRE(indices(base) == indices(scaled));
  for (std::size_t k = 0; k < base.size(); ++k) {
    CHECK(scaled[k].prominence == doctest::Approx(10.0 * base[k].prominence).epsilon(1e-12));
  }
}

TEST_CASE("histogram counts consecutive intervals") {
  std::vector<std::size_t> at{40, 111, 190, 260, 333};
  auto spikes = detect_spikes(noisy_sweep(1, 0.0, 1.0, at), SpikeConfig{});
  auto h = interval_histogram(spikes, 0.01);
  CHECK(h.total() == spikes.size() - 1);
  CHECK(interval_histogram(std::vector<SpikeEvent>{}, 0.01).total() == 0);
  CHECK(interval_histogram(std::vector<SpikeEvent>(1), 0.01).total() == 0);
  for (double w : {0.01, 0.02, 0.05}) {
    CHECK(interval_histogram(spikes, 2 * w).counts.size() <= interval_histogram(spikes, w).counts.size());
  }
}

TEST_CASE("per-phase histograms split the intervals") {
  std::vector<std::size_t> at{40, 111, 190, 260, 333};
  auto s = noisy_sweep(1, 0.0, 1.0, at);
  auto spikes = detect_spikes(s, SpikeConfig{});
  auto [rise, fall] = interval_histogram_per_phase(s, spikes, 0.01);
  CHECK(rise.total() == 2);
  CHECK(fall.total() == 1);
}

TEST_CASE("spike config validation") {
  CHECK_THROWS(SpikeConfig{10, 4.0, 1e-10}.validate());
  CHECK_THROWS(SpikeConfig{11, -1.0, 1e-10}.validate());
  CHECK_NOTHROW(SpikeConfig{}.validate());
}
