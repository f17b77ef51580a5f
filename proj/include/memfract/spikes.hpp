#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "memfract/sweep.hpp"

namespace memfract {

struct SpikeConfig {
  int window = 11;       // samples, odd, >= 3
  double k = 4.0;        // MAD multiplier
  double floor = 1e-10;  // A

  void validate() const;
};

struct SpikeEvent {
  std::size_t index = 0;
  double t = 0.0;
  double v = 0.0;
  double i = 0.0;
  double prominence = 0.0;  // |i - window median|, A
};

/// A sample is a spike when it is a strict local extremum of i and its
/// distance from the centred window median exceeds max(k * sigma, floor),
/// sigma being the window MAD scaled by 1.4826.
/// Only samples with a full window are considered.
std::vector<SpikeEvent> detect_spikes(const SweepSeries& series, const SpikeConfig& cfg);

struct IntervalHistogram {
  double bin_width = 0.0;
  std::map<long long, std::size_t> counts;  // bin index m covers [m w, (m+1) w)

  double lower_edge(long long bin) const { return static_cast<double>(bin) * bin_width; }
  std::size_t total() const;
  void merge(const IntervalHistogram& other);
};

/// Bins |v_{n+1} - v_n| over consecutive spikes (time order).
IntervalHistogram interval_histogram(std::span<const SpikeEvent> spikes, double bin_width);

/// Splits the spikes by sweep phase (sign of dv/dt at the spike) and bins
/// each phase separately: first = rising, second = falling.
std::pair<IntervalHistogram, IntervalHistogram> interval_histogram_per_phase(
    const SweepSeries& series, std::span<const SpikeEvent> spikes, double bin_width);

}  // namespace memfract
