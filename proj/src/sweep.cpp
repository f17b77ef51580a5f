#include "memfract/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

namespace memfract {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(trim(std::string_view(line).substr(start)));
      break;
    }
    out.push_back(trim(std::string_view(line).substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

double parse_number(const std::string& field, std::size_t line, const char* name) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc() || ptr != last) {
    throw ParseError(line, std::string("non-numeric ") + name + " field '" + field + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(line, std::string("non-finite ") + name + " value");
  }
  return value;
}

double interpolate(const std::vector<SweepRecord>& r, double t, double SweepRecord::*field) {
  auto it = std::lower_bound(r.begin(), r.end(), t,
                             [](const SweepRecord& a, double x) { return a.t < x; });
  if (it != r.end() && it->t == t) return (*it).*field;
  if (it == r.begin() || it == r.end()) {
    throw std::out_of_range("interpolation outside run");
  }
  const SweepRecord& hi = *it;
  const SweepRecord& lo = *(it - 1);
  double w = (t - lo.t) / (hi.t - lo.t);
  return lo.*field + w * (hi.*field - lo.*field);
}

}  // namespace

std::string to_string(ElectrodeArrangement a) {
  switch (a) {
    case ElectrodeArrangement::cap_to_cap:
      return "cap_to_cap";
    case ElectrodeArrangement::stem_to_cap:
      return "stem_to_cap";
  }
  return "unknown";
}

ElectrodeArrangement parse_electrode_arrangement(const std::string& s) {
  if (s == "cap_to_cap") return ElectrodeArrangement::cap_to_cap;
  if (s == "stem_to_cap") return ElectrodeArrangement::stem_to_cap;
  throw ValidationError("unknown electrode_arrangement '" + s + "'");
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

SweepConfig::SweepConfig(double v_min, double v_max, double v_step,
                         ElectrodeArrangement arrangement, SweepDirection direction)
    : v_min_(v_min), v_max_(v_max), v_step_(v_step), arrangement_(arrangement),
      direction_(direction) {
  if (!std::isfinite(v_min) || !std::isfinite(v_max) || !std::isfinite(v_step)) {
    throw ValidationError("sweep config values must be finite");
  }
  if (!(v_min < v_max)) throw ValidationError("sweep config requires v_min < v_max");
  if (!(v_step > 0.0)) throw ValidationError("sweep config requires v_step > 0");
  if (v_step > v_max - v_min) {
    throw ValidationError("sweep config requires v_step <= v_max - v_min");
  }
}

SweepConfig SweepConfig::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("sweep config: ") + e.what());
  }
  try {
    auto arrangement = ElectrodeArrangement::stem_to_cap;
    if (j.contains("electrode_arrangement")) {
      arrangement = parse_electrode_arrangement(j.at("electrode_arrangement").get<std::string>());
    }
    if (j.contains("direction") && j.at("direction").get<std::string>() != "cyclic") {
      throw ValidationError("sweep config: only cyclic direction is supported");
    }
    return SweepConfig(j.at("v_min").get<double>(), j.at("v_max").get<double>(),
                       j.at("v_step").get<double>(), arrangement);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("sweep config: ") + e.what());
  }
}

std::string SweepConfig::to_json_text() const {
  nlohmann::ordered_json j;
  j["v_min"] = v_min_;
  j["v_max"] = v_max_;
  j["v_step"] = v_step_;
  j["electrode_arrangement"] = to_string(arrangement_);
  j["direction"] = "cyclic";
  return j.dump(2);
}

SweepSeries::SweepSeries(std::string run_id, SweepConfig config, std::vector<SweepRecord> records)
    : run_id_(std::move(run_id)), config_(config), records_(std::move(records)) {
  if (records_.size() < 2) {
    throw ValidationError("run '" + run_id_ + "' needs at least 2 records");
  }
  for (std::size_t k = 0; k < records_.size(); ++k) {
    const auto& r = records_[k];
    if (!std::isfinite(r.t) || !std::isfinite(r.v) || !std::isfinite(r.i) || r.t < 0.0) {
      throw ValidationError("run '" + run_id_ + "': record " + std::to_string(k) +
                            " has non-finite or negative values");
    }
    if (k > 0 && !(r.t > records_[k - 1].t)) {
      throw ValidationError("run '" + run_id_ + "': time not strictly increasing at record " +
                            std::to_string(k));
    }
  }
}

std::vector<double> SweepSeries::times() const {
  std::vector<double> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.t);
  return out;
}

std::vector<double> SweepSeries::voltages() const {
  std::vector<double> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.v);
  return out;
}

std::vector<double> SweepSeries::currents() const {
  std::vector<double> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.i);
  return out;
}

std::vector<SweepSeries> parse_sweep_csv(std::istream& in, const SweepConfig& config) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<std::string> order;
  std::map<std::string, std::vector<SweepRecord>> rows;
  std::map<std::string, std::vector<std::size_t>> row_lines;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
      line.erase(0, 3);
    }
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    auto fields = split_commas(stripped);
    if (!have_header) {
      if (fields != std::vector<std::string>{"run_id", "t_s", "v_V", "i_A"}) {
        throw ParseError(line_no, "expected header 'run_id,t_s,v_V,i_A'");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != 4) {
      throw ParseError(line_no, "expected 4 fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw ParseError(line_no, "empty run_id");
    SweepRecord r{parse_number(fields[1], line_no, "t_s"), parse_number(fields[2], line_no, "v_V"),
                  parse_number(fields[3], line_no, "i_A")};
    auto [it, inserted] = rows.try_emplace(fields[0]);
    if (inserted) order.push_back(fields[0]);
    it->second.push_back(r);
    row_lines[fields[0]].push_back(line_no);
  }
  if (!have_header) throw ParseError(line_no == 0 ? 1 : line_no, "empty file");
  if (order.empty()) throw ParseError(line_no, "no data rows");

  std::vector<SweepSeries> out;
  out.reserve(order.size());
  for (const auto& id : order) {
    const auto& recs = rows[id];
    for (std::size_t k = 1; k < recs.size(); ++k) {
      if (!(recs[k].t > recs[k - 1].t)) {
        throw ValidationError("line " + std::to_string(row_lines[id][k]) + ": run '" + id +
                              "' time is not strictly increasing");
      }
    }
    out.emplace_back(id, config, recs);
  }
  return out;
}

std::vector<SweepSeries> parse_sweep_csv_text(const std::string& text, const SweepConfig& config) {
  std::istringstream in(text);
  return parse_sweep_csv(in, config);
}

void write_sweep_csv(std::ostream& out, std::span<const SweepSeries> runs,
                     std::span<const std::string> comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "run_id,t_s,v_V,i_A\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& run : runs) {
    for (const auto& r : run.records()) {
      out << run.run_id() << ',' << r.t << ',' << r.v << ',' << r.i << '\n';
    }
  }
}

SweepSeries average_runs(std::span<const SweepSeries> runs) {
  if (runs.empty()) throw ValidationError("average_runs: no runs");
  const SweepConfig& config = runs.front().config();
  double t_lo = runs.front().records().front().t;
  double t_hi = runs.front().records().back().t;
  for (const auto& run : runs) {
    if (!(run.config() == config)) {
      throw ValidationError("average_runs: run '" + run.run_id() + "' has a different config");
    }
    t_lo = std::max(t_lo, run.records().front().t);
    t_hi = std::min(t_hi, run.records().back().t);
  }

  std::vector<SweepRecord> out;
  for (const auto& base : runs.front().records()) {
    if (base.t < t_lo || base.t > t_hi) continue;
    // Incremental mean: n identical inputs give back the input exactly.
    double v_mean = 0.0;
    double i_mean = 0.0;
    std::size_t n = 0;
    for (const auto& run : runs) {
      ++n;
      double v = interpolate(run.records(), base.t, &SweepRecord::v);
      double i = interpolate(run.records(), base.t, &SweepRecord::i);
      v_mean += (v - v_mean) / static_cast<double>(n);
      i_mean += (i - i_mean) / static_cast<double>(n);
    }
    out.push_back({base.t, v_mean, i_mean});
  }
  if (out.size() < 2) throw ValidationError("average_runs: runs overlap on fewer than 2 samples");
  return SweepSeries("average", config, std::move(out));
}

double histogram_bin_width(const SweepConfig& config) { return config.v_step(); }

}  // namespace memfract
