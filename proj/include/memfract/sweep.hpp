#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace memfract {

enum class ElectrodeArrangement { cap_to_cap, stem_to_cap };
enum class SweepDirection { cyclic };

std::string to_string(ElectrodeArrangement a);
ElectrodeArrangement parse_electrode_arrangement(const std::string& s);

/// Thrown for malformed sweep text. `line()` is 1-based and counts the header.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Source-measure unit sweep settings.
class SweepConfig {
 public:
  SweepConfig(double v_min, double v_max, double v_step,
              ElectrodeArrangement arrangement = ElectrodeArrangement::stem_to_cap,
              SweepDirection direction = SweepDirection::cyclic);

  double v_min() const { return v_min_; }
  double v_max() const { return v_max_; }
  double v_step() const { return v_step_; }
  ElectrodeArrangement electrode_arrangement() const { return arrangement_; }
  SweepDirection direction() const { return direction_; }

  bool operator==(const SweepConfig&) const = default;

  /// Parses the sidecar JSON object, e.g.
  /// {"v_min":-1.0,"v_max":1.0,"v_step":0.01,"electrode_arrangement":"stem_to_cap"}
  static SweepConfig from_json_text(const std::string& text);
  std::string to_json_text() const;

 private:
  double v_min_;
  double v_max_;
  double v_step_;
  ElectrodeArrangement arrangement_;
  SweepDirection direction_;
};

struct SweepRecord {
  double t = 0.0;  // s
  double v = 0.0;  // V
  double i = 0.0;  // A

  bool operator==(const SweepRecord&) const = default;
};

/// One run of readings, strictly increasing in time.
class SweepSeries {
 public:
  SweepSeries(std::string run_id, SweepConfig config, std::vector<SweepRecord> records);

  const std::string& run_id() const { return run_id_; }
  const SweepConfig& config() const { return config_; }
  const std::vector<SweepRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  const SweepRecord& operator[](std::size_t k) const { return records_[k]; }

  std::vector<double> times() const;
  std::vector<double> voltages() const;
  std::vector<double> currents() const;

 private:
  std::string run_id_;
  SweepConfig config_;
  std::vector<SweepRecord> records_;
};

/// Reads `run_id,t_s,v_V,i_A` rows. Runs come back in order of first appearance.
std::vector<SweepSeries> parse_sweep_csv(std::istream& in, const SweepConfig& config);
std::vector<SweepSeries> parse_sweep_csv_text(const std::string& text, const SweepConfig& config);

/// Writes the ingestion format with 17 significant digits, so parsing the
/// output reproduces every record bit for bit. Lines in `comments` are
/// emitted first, each prefixed with "# ".
void write_sweep_csv(std::ostream& out, std::span<const SweepSeries> runs,
                     std::span<const std::string> comments = {});

/// Resamples every run onto the first run's time grid (restricted to the
/// interval all runs cover) by linear interpolation, then averages v and i.
SweepSeries average_runs(std::span<const SweepSeries> runs);

double histogram_bin_width(const SweepConfig& config);

}  // namespace memfract
