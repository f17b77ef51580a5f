#include "memfract/spikes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace memfract {

namespace {

double median(std::vector<double>& xs) {
  const std::size_t n = xs.size();
  std::nth_element(xs.begin(), xs.begin() + n / 2, xs.end());
  double hi = xs[n / 2];
  if (n % 2 == 1) return hi;
  double lo = *std::max_element(xs.begin(), xs.begin() + n / 2);
  return 0.5 * (lo + hi);
}

constexpr double kMadToSigma = 1.4826;  // Gaussian consistency factor

}  // namespace

void SpikeConfig::validate() const {
  if (window < 3 || window % 2 == 0) {
    throw std::invalid_argument("spike window must be odd and >= 3, got " + std::to_string(window));
  }
  if (!(k > 0.0)) throw std::invalid_argument("spike threshold k must be > 0");
  if (!(floor >= 0.0)) throw std::invalid_argument("spike floor must be >= 0");
}

std::vector<SpikeEvent> detect_spikes(const SweepSeries& series, const SpikeConfig& cfg) {
  cfg.validate();
  const auto& r = series.records();
  const std::size_t w = static_cast<std::size_t>(cfg.window);
  if (r.size() < w) {
    throw std::invalid_argument("series '" + series.run_id() + "' is shorter than the spike window");
  }
  const std::size_t half = w / 2;
  std::vector<SpikeEvent> out;
  std::vector<double> buf(w);
  for (std::size_t n = half; n + half < r.size(); ++n) {
    const double x = r[n].i;
    const bool peak = x > r[n - 1].i && x > r[n + 1].i;
    const bool trough = x < r[n - 1].i && x < r[n + 1].i;
    if (!peak && !trough) continue;
    for (std::size_t k = 0; k < w; ++k) buf[k] = r[n - half + k].i;
    const double med = median(buf);
    for (std::size_t k = 0; k < w; ++k) buf[k] = std::abs(r[n - half + k].i - med);
    const double mad = kMadToSigma * median(buf);
    const double dev = std::abs(x - med);
    if (dev > std::max(cfg.k * mad, cfg.floor)) {
      out.push_back({n, r[n].t, r[n].v, x, dev});
    }
  }
  return out;
}

std::size_t IntervalHistogram::total() const {
  std::size_t n = 0;
  for (const auto& [bin, c] : counts) n += c;
  return n;
}

void IntervalHistogram::merge(const IntervalHistogram& other) {
  if (other.bin_width != bin_width) throw std::invalid_argument("histogram bin widths differ");
  for (const auto& [bin, c] : other.counts) counts[bin] += c;
}

IntervalHistogram interval_histogram(std::span<const SpikeEvent> spikes, double bin_width) {
  if (!(bin_width > 0.0)) throw std::invalid_argument("histogram bin width must be > 0");
  IntervalHistogram h;
  h.bin_width = bin_width;
  for (std::size_t n = 1; n < spikes.size(); ++n) {
    double dv = std::abs(spikes[n].v - spikes[n - 1].v);
    // The small offset keeps exact multiples (0.01 / 0.01) in their own bin.
    auto m = static_cast<long long>(std::floor(dv / bin_width + 1e-9));
    ++h.counts[m];
  }
  return h;
}

std::pair<IntervalHistogram, IntervalHistogram> interval_histogram_per_phase(
    const SweepSeries& series, std::span<const SpikeEvent> spikes, double bin_width) {
  const auto& r = series.records();
  std::vector<SpikeEvent> rising, falling;
  for (const auto& s : spikes) {
    std::size_t a = s.index > 0 ? s.index - 1 : s.index;
    std::size_t b = s.index + 1 < r.size() ? s.index + 1 : s.index;
    (r[b].v - r[a].v >= 0.0 ? rising : falling).push_back(s);
  }
  return {interval_histogram(rising, bin_width), interval_histogram(falling, bin_width)};
}

}  // namespace memfract
