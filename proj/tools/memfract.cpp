// memfract: command-line front end.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "memfract/classify.hpp"
#include "memfract/io.hpp"
#include "memfract/memfractance.hpp"
#include "memfract/parallel.hpp"
#include "memfract/pipeline.hpp"
#include "memfract/polyfit.hpp"
#include "memfract/reference_models.hpp"
#include "memfract/search.hpp"
#include "memfract/spikes.hpp"
#include "memfract/svg.hpp"
#include "memfract/sweep.hpp"
#include "memfract/version.hpp"

namespace fs = std::filesystem;
using memfract::format_double;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;

struct Common {
  std::vector<std::string> inputs;
  std::string config;
  std::string out_dir = ".";
  unsigned threads = 0;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--input,-i", c.inputs, "Input file(s)");
  cmd->add_option("--config,-c", c.config, "Configuration JSON");
  cmd->add_option("--out-dir,-o", c.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker threads (0: all cores)");
  cmd->add_option("--seed", c.seed, "Random seed");
}

/// Input errors that map to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Run {
  std::string command;
  Common common;
  std::string digest;
  std::vector<std::string> outputs;

  std::string header() const {
    return std::string("memfract ") + memfract::kVersion + " input-digest=" + digest;
  }
  fs::path out(const std::string& name) const { return fs::path(common.out_dir) / name; }

  void write(const std::string& name, const std::string& text) {
    memfract::write_text_file(out(name), text);
    outputs.push_back(name);
  }
  void write_csv(const std::string& name, const std::string& body) {
    write(name, "# " + header() + "\n" + body);
  }
  void write_json(const std::string& name, ojson j) {
    ojson meta;
    meta["tool"] = "memfract";
    meta["version"] = memfract::kVersion;
    meta["input_digest"] = digest;
    ojson out;
    out["_meta"] = meta;
    for (auto& [k, v] : j.items()) out[k] = v;
    write(name, out.dump(2) + "\n");
  }
  void write_manifest() {
    ojson m;
    m["command"] = command;
    m["inputs"] = common.inputs;
    m["config"] = common.config;
    m["out_dir"] = common.out_dir;
    m["version"] = memfract::kVersion;
    const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
    m["timestamp"] = epoch ? std::strtoll(epoch, nullptr, 10) : 0;
    m["seed"] = common.seed;
    m["input_digest"] = digest;
    m["outputs"] = outputs;
    memfract::write_text_file(out("manifest_" + command + ".json"), m.dump(2) + "\n");
  }
};

std::string read_input(const std::string& path) {
  try {
    return memfract::read_text_file(path);
  } catch (const memfract::IoError& e) {
    throw InputError(e.what());
  }
}

Run start_run(const std::string& command, const Common& c) {
  Run r{command, c, "", {}};
  std::uint64_t h = memfract::fnv1a64("");
  for (const auto& p : c.inputs) h = memfract::fnv1a64(read_input(p), h);
  if (!c.config.empty()) h = memfract::fnv1a64(read_input(c.config), h);
  r.digest = memfract::hex64(h);
  std::error_code ec;
  fs::create_directories(c.out_dir, ec);
  if (ec || !fs::is_directory(c.out_dir)) {
    throw InputError("cannot create output directory '" + c.out_dir + "'");
  }
  return r;
}

memfract::SweepConfig load_sweep_config(const std::string& path) {
  if (path.empty()) return memfract::SweepConfig(-1.0, 1.0, 0.01);
  return memfract::SweepConfig::from_json_text(read_input(path));
}

std::vector<memfract::SweepSeries> load_sweeps(const Common& c) {
  if (c.inputs.empty()) throw InputError("no --input sweep file given");
  auto cfg = load_sweep_config(c.config);
  std::vector<memfract::SweepSeries> runs;
  for (const auto& p : c.inputs) {
    auto r = memfract::parse_sweep_csv_text(read_input(p), cfg);
    runs.insert(runs.end(), r.begin(), r.end());
  }
  return runs;
}

struct ModelInputs {
  memfract::PolynomialFile voltage;
  memfract::PolynomialFile current;
  bool piecewise() const { return voltage.piecewise.has_value(); }
};

ModelInputs load_model_inputs(const std::vector<std::string>& inputs) {
  if (inputs.size() != 2) {
    throw InputError("expected two --input files: voltage polynomial then current polynomial");
  }
  ModelInputs m{memfract::parse_polynomial_json(read_input(inputs[0])),
                memfract::parse_polynomial_json(read_input(inputs[1]))};
  if (m.voltage.piecewise.has_value() != m.current.piecewise.has_value()) {
    throw InputError("voltage and current files must both be global or both piecewise");
  }
  return m;
}

memfract::MemfractanceModel build_model(const ModelInputs& m, double delta) {
  if (m.piecewise()) {
    return memfract::model_from_piecewise(*m.voltage.piecewise, *m.current.piecewise, delta);
  }
  double t_end = std::min(m.voltage.domain[1], m.current.domain[1]);
  return memfract::model_from_global(*m.voltage.global, *m.current.global, t_end);
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char ch : s) out += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_') ? ch : '_';
  return out;
}

// ---------------------------------------------------------------- fit

struct FitArgs {
  int degree = 24;
  bool piecewise = false;
  std::string breakpoint = "auto";
  bool no_average = false;
};

int cmd_fit(const Common& c, const FitArgs& a) {
  auto runs = load_sweeps(c);
  Run run = start_run("fit", c);
  memfract::SweepSeries series =
      runs.size() == 1 || a.no_average ? runs.front() : memfract::average_runs(runs);
  auto t = series.times();
  std::array<double, 2> domain{0.0, t.back()};

  ojson stats;
  stats["run"] = series.run_id();
  stats["runs_averaged"] = a.no_average ? 1 : runs.size();
  stats["degree"] = a.degree;
  auto stats_json = [](const memfract::FitStats& s) {
    return ojson{{"sse", s.sse}, {"ssr", s.ssr}, {"sst", s.sst}, {"r_squared", s.r_squared}};
  };

  std::vector<double> v_fit(t.size()), i_fit(t.size());
  if (a.piecewise) {
    double T = 0.0;
    if (a.breakpoint == "auto") {
      T = a.no_average ? memfract::estimate_breakpoint(series) : memfract::estimate_breakpoint(runs);
    } else {
      try {
        T = std::stod(a.breakpoint);
      } catch (const std::exception&) {
        throw InputError("--breakpoint must be 'auto' or a number");
      }
    }
    auto fit = memfract::fit_piecewise_model(series, a.degree, T);
    stats["breakpoint"] = T;
    stats["voltage"] = {{"left", stats_json(fit.voltage.left)}, {"right", stats_json(fit.voltage.right)}};
    stats["current"] = {{"left", stats_json(fit.current.left)}, {"right", stats_json(fit.current.right)}};
    run.write_json("voltage_fit.json", ojson::parse(memfract::piecewise_json(fit.voltage.poly, domain, "voltage")));
    run.write_json("current_fit.json", ojson::parse(memfract::piecewise_json(fit.current.poly, domain, "current")));
    for (std::size_t k = 0; k < t.size(); ++k) {
      v_fit[k] = fit.voltage.poly(t[k]);
      i_fit[k] = fit.current.poly(t[k]);
    }
  } else {
    auto fit = memfract::fit_global_model(series, a.degree);
    stats["voltage"] = stats_json(fit.voltage.stats);
    stats["current"] = stats_json(fit.current.stats);
    run.write_json("voltage_fit.json", ojson::parse(memfract::polynomial_json(fit.voltage.poly, domain, "voltage")));
    run.write_json("current_fit.json", ojson::parse(memfract::polynomial_json(fit.current.poly, domain, "current")));
    for (std::size_t k = 0; k < t.size(); ++k) {
      v_fit[k] = fit.voltage.poly(t[k]);
      i_fit[k] = fit.current.poly(t[k]);
    }
  }
  run.write_json("fit_stats.json", stats);

  std::ostringstream csv;
  csv << "t,v,v_fit,i,i_fit\n";
  const auto& r = series.records();
  for (std::size_t k = 0; k < r.size(); ++k) {
    csv << format_double(r[k].t) << ',' << format_double(r[k].v) << ',' << format_double(v_fit[k])
        << ',' << format_double(r[k].i) << ',' << format_double(i_fit[k]) << '\n';
  }
  run.write_csv("overlay.csv", csv.str());
  run.write("overlay_voltage.svg",
            memfract::svg_line_plot({{"v", t, series.voltages()}, {"v_fit", t, v_fit}},
                                    {"Voltage fit", "t (s)", "v (V)", run.header()}));
  run.write_manifest();
  std::cout << stats.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- search

struct SearchArgs {
  std::string grid;
  std::optional<int> t_points;
  std::optional<double> eps_t;
  std::optional<double> delta;
  std::optional<double> fix_alpha2;
  std::string anchors;
};

int cmd_search(const Common& c, const SearchArgs& a) {
  auto inputs = load_model_inputs(c.inputs);
  Run run = start_run("search", c);
  memfract::SearchConfig cfg;
  if (!c.config.empty()) cfg = memfract::SearchConfig::from_json_text(read_input(c.config));
  if (!a.grid.empty()) {
    auto x = a.grid.find('x');
    try {
      cfg.grid_alpha1 = std::stoi(a.grid.substr(0, x));
      cfg.grid_alpha2 = x == std::string::npos ? cfg.grid_alpha1 : std::stoi(a.grid.substr(x + 1));
    } catch (const std::exception&) {
      throw InputError("--grid must look like 201x201");
    }
  }
  if (a.t_points) cfg.t_points = *a.t_points;
  if (a.eps_t) cfg.eps_t = *a.eps_t;
  if (a.delta) cfg.delta = *a.delta;
  if (a.fix_alpha2) cfg.fix_alpha2 = *a.fix_alpha2;
  cfg.threads = c.threads;
  cfg.validate();

  auto model = build_model(inputs, cfg.delta);
  memfract::SearchResult res;
  try {
    res = memfract::search_optimal(model, cfg);
  } catch (const memfract::NoFeasibleCandidate& e) {
    std::cerr << "memfract search: " << e.what() << '\n';
    ojson near = ojson::array();
    for (const auto& m : e.nearest()) {
      std::cerr << "  nearest matched couple: alpha1=" << format_double(m.alpha1)
                << " alpha2=" << format_double(m.alpha2) << " t*=" << format_double(m.t_star) << '\n';
      near.push_back({{"alpha1", m.alpha1}, {"alpha2", m.alpha2}, {"t_star", m.t_star}});
    }
    run.write_json("search_infeasible.json", {{"error", e.what()}, {"nearest_couples", near}});
    run.write_manifest();
    return kExitInfeasible;
  }

  auto anchors = a.anchors.empty() ? memfract::AnchorConfig::defaults()
                                   : memfract::AnchorConfig::from_json_text(read_input(a.anchors));
  auto cls = memfract::classify_device(res.alphas, anchors);

  ojson opt;
  opt["alpha1"] = res.alphas.alpha1();
  opt["alpha2"] = res.alphas.alpha2();
  opt["m1"] = res.alphas.m1();
  opt["m2"] = res.alphas.m2();
  opt["range"] = res.range;
  opt["piecewise"] = inputs.piecewise();
  opt["start"] = {{"kind", res.start_kind == memfract::CandidateKind::grid_cell ? "grid_cell" : "matched_couple"},
                  {"alpha1", res.start.alpha1()},
                  {"alpha2", res.start.alpha2()},
                  {"range", res.start_range}};
  opt["feasible_cells"] = res.feasible_cells;
  opt["feasible_couples"] = res.feasible_couples;
  opt["refine_iterations"] = res.refine_iterations;
  opt["singular_points"] = res.curve.singular_points;
  opt["classification"] = {{"label", cls.label}, {"regions", cls.regions}, {"description", cls.region_descriptor}};
  opt["config"] = ojson::parse(cfg.to_json_text());
  run.write_json("optimum.json", opt);

  std::ostringstream curve;
  curve << "t,F\n";
  for (std::size_t k = 0; k < res.curve.t_grid.size(); ++k) {
    if (std::isnan(res.curve.values[k])) continue;
    curve << format_double(res.curve.t_grid[k]) << ',' << format_double(res.curve.values[k]) << '\n';
  }
  run.write_csv("memfractance_curve.csv", curve.str());

  std::ostringstream loci;
  loci << "side,alpha,t_star\n";
  for (const auto& z : res.numerator_loci) {
    for (double t : z.zeros) loci << "numerator," << format_double(z.alpha) << ',' << format_double(t) << '\n';
  }
  for (const auto& z : res.denominator_loci) {
    for (double t : z.zeros) loci << "denominator," << format_double(z.alpha) << ',' << format_double(t) << '\n';
  }
  run.write_csv("zero_loci.csv", loci.str());

  std::ostringstream couples;
  couples << "alpha1,alpha2,t_star\n";
  for (const auto& m : res.couples) {
    couples << format_double(m.alpha1) << ',' << format_double(m.alpha2) << ',' << format_double(m.t_star) << '\n';
  }
  run.write_csv("matched_couples.csv", couples.str());

  std::ostringstream title;
  title << "Memfractance at alpha1=" << res.alphas.alpha1() << ", alpha2=" << res.alphas.alpha2();
  run.write("memfractance.svg",
            memfract::svg_line_plot({{"F", res.curve.t_grid, res.curve.values}},
                                    {title.str(), "t (s)", "F", run.header()}));
  run.write_manifest();
  std::cout << opt.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- reconstruct

struct ReconstructArgs {
  std::optional<double> alpha1;
  std::optional<double> alpha2;
  std::string optimum;
  std::string sweep;
  int points = 171;
};

int cmd_reconstruct(const Common& c, const ReconstructArgs& a) {
  auto inputs = load_model_inputs(c.inputs);
  if (inputs.piecewise()) throw InputError("reconstruct expects global (single-piece) polynomials");
  Run run = start_run("reconstruct", c);
  double a1 = 0.0;
  double a2 = 0.0;
  if (!a.optimum.empty()) {
    auto j = ojson::parse(read_input(a.optimum));
    a1 = j.at("alpha1").get<double>();
    a2 = j.at("alpha2").get<double>();
  }
  if (a.alpha1) a1 = *a.alpha1;
  if (a.alpha2) a2 = *a.alpha2;
  if (a.optimum.empty() && (!a.alpha1 || !a.alpha2)) {
    throw InputError("give --alpha1 and --alpha2, or --optimum optimum.json");
  }
  memfract::FracOrderPair alphas(a1, a2);
  auto flux = memfract::integrate_polynomial(*inputs.voltage.global);
  auto charge = memfract::integrate_polynomial(*inputs.current.global);
  auto current = memfract::reconstruct_current(flux, charge, alphas);
  std::array<double, 2> domain = inputs.current.domain;
  run.write_json("current_reconstructed.json", ojson::parse(memfract::polynomial_json(current, domain, "current")));

  std::vector<double> t;
  if (!a.sweep.empty()) {
    auto runs = memfract::parse_sweep_csv_text(read_input(a.sweep), load_sweep_config(c.config));
    auto s = runs.size() == 1 ? runs.front() : memfract::average_runs(runs);
    t = s.times();
    std::ostringstream csv;
    csv << "t,i_measured,i_reconstructed,i_identity_check\n";
    for (const auto& r : s.records()) {
      csv << format_double(r.t) << ',' << format_double(r.i) << ',' << format_double(current(r.t)) << ','
          << format_double(r.t > 0 ? memfract::reconstruct_current_numeric(charge, alphas, r.t) : current(0.0))
          << '\n';
    }
    run.write_csv("reconstruction.csv", csv.str());
  } else {
    if (a.points < 2) throw InputError("--points must be >= 2");
    std::ostringstream csv;
    csv << "t,i_reconstructed,i_identity_check\n";
    for (int k = 1; k <= a.points; ++k) {
      double tk = domain[0] + (domain[1] - domain[0]) * k / a.points;
      csv << format_double(tk) << ',' << format_double(current(tk)) << ','
          << format_double(memfract::reconstruct_current_numeric(charge, alphas, tk)) << '\n';
    }
    run.write_csv("reconstruction.csv", csv.str());
  }
  run.write_manifest();
  return kExitOk;
}

// ---------------------------------------------------------------- spikes

struct SpikeArgs {
  memfract::SpikeConfig cfg;
  bool per_phase = false;
};

std::string spikes_csv(const std::vector<memfract::SpikeEvent>& s) {
  std::ostringstream o;
  o << "index,t_s,v_V,i_A,prominence_A\n";
  for (const auto& e : s) {
    o << e.index << ',' << format_double(e.t) << ',' << format_double(e.v) << ',' << format_double(e.i)
      << ',' << format_double(e.prominence) << '\n';
  }
  return o.str();
}

std::string histogram_csv(const memfract::IntervalHistogram& h) {
  std::ostringstream o;
  o << "bin_lower_V,count\n";
  for (const auto& [bin, count] : h.counts) o << format_double(h.lower_edge(bin)) << ',' << count << '\n';
  return o.str();
}

int cmd_spikes(const Common& c, const SpikeArgs& a) {
  auto runs = load_sweeps(c);
  a.cfg.validate();
  Run run = start_run("spikes", c);
  const double w = memfract::histogram_bin_width(runs.front().config());
  memfract::IntervalHistogram all{w, {}};
  memfract::IntervalHistogram all_rising{w, {}}, all_falling{w, {}};
  std::vector<memfract::SpikeEvent> concat;
  ojson summary = ojson::array();
  for (const auto& s : runs) {
    auto spikes = memfract::detect_spikes(s, a.cfg);
    auto h = memfract::interval_histogram(spikes, w);
    const std::string tag = sanitize(s.run_id());
    run.write_csv("spikes_" + tag + ".csv", spikes_csv(spikes));
    run.write_csv("histogram_" + tag + ".csv", histogram_csv(h));
    all.merge(h);
    if (a.per_phase) {
      auto [rise, fall] = memfract::interval_histogram_per_phase(s, spikes, w);
      run.write_csv("histogram_" + tag + "_rising.csv", histogram_csv(rise));
      run.write_csv("histogram_" + tag + "_falling.csv", histogram_csv(fall));
      all_rising.merge(rise);
      all_falling.merge(fall);
    }
    concat.insert(concat.end(), spikes.begin(), spikes.end());
    summary.push_back({{"run", s.run_id()},
                       {"arrangement", memfract::to_string(s.config().electrode_arrangement())},
                       {"spikes", spikes.size()},
                       {"intervals", h.total()}});
  }
  run.write_csv("spikes_all.csv", spikes_csv(concat));
  run.write_csv("histogram_all.csv", histogram_csv(all));
  if (a.per_phase) {
    run.write_csv("histogram_all_rising.csv", histogram_csv(all_rising));
    run.write_csv("histogram_all_falling.csv", histogram_csv(all_falling));
  }
  run.write_json("spikes_summary.json", {{"bin_width", w}, {"runs", summary}});
  run.write_manifest();
  std::cout << summary.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- simulate

memfract::Waveform parse_drive(const ojson& j) {
  memfract::Waveform w;
  if (j.contains("shape")) w.shape = memfract::parse_waveform_shape(j.at("shape").get<std::string>());
  if (j.contains("amplitude")) w.amplitude = j.at("amplitude").get<double>();
  if (j.contains("period")) w.period = j.at("period").get<double>();
  if (j.contains("samples")) w.samples = j.at("samples").get<int>();
  if (j.contains("cycles")) w.cycles = j.at("cycles").get<int>();
  w.validate();
  return w;
}

int cmd_simulate(const Common& c) {
  if (c.config.empty()) throw InputError("simulate needs --config device_spec.json");
  ojson spec;
  try {
    spec = ojson::parse(read_input(c.config));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("device spec: ") + e.what());
  }
  Run run = start_run("simulate", c);
  const std::string model = spec.value("model", "");
  memfract::SweepSeries series("empty", memfract::SweepConfig(-1, 1, 0.01), {{0, 0, 0}, {1, 0, 0}});
  try {
    if (model == "ideal_memristor") {
      memfract::IdealMemristorParams p;
      p.r_on = spec.value("r_on", p.r_on);
      p.r_off = spec.value("r_off", p.r_off);
      p.d = spec.value("d", p.d);
      p.mu = spec.value("mu", p.mu);
      p.w0 = spec.value("w0", p.w0);
      p.substeps = spec.value("substeps", p.substeps);
      memfract::Waveform drive;
      if (spec.contains("drive")) drive = parse_drive(spec.at("drive"));
      series = memfract::simulate_ideal_memristor(p, drive);
    } else if (model == "memfractor") {
      memfract::SyntheticDeviceSpec s;
      s.alphas = memfract::FracOrderPair(spec.at("alpha1").get<double>(), spec.at("alpha2").get<double>());
      s.f_const = spec.at("F_const").get<double>();
      if (spec.contains("drive")) s.drive = parse_drive(spec.at("drive"));
      s.charge_degree = spec.value("charge_degree", s.charge_degree);
      s.charge_scale = spec.value("charge_scale", s.charge_scale);
      series = memfract::synth_memfractor_sweep(s, spec.value("noise", 0.0), c.seed);
    } else {
      throw InputError("device spec 'model' must be 'ideal_memristor' or 'memfractor'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("device spec: ") + e.what());
  }

  std::ostringstream sweep;
  std::vector<std::string> comments{run.header()};
  memfract::write_sweep_csv(sweep, std::span(&series, 1), comments);
  run.write("sweep.csv", sweep.str());
  run.write_json("sweep_config.json", ojson::parse(series.config().to_json_text()));
  std::ostringstream iv;
  iv << "v_V,i_A\n";
  for (const auto& r : series.records()) iv << format_double(r.v) << ',' << format_double(r.i) << '\n';
  run.write_csv("iv.csv", iv.str());
  run.write("iv.svg", memfract::svg_line_plot({{"I-V", series.voltages(), series.currents()}},
                                              {"I-V curve", "v (V)", "i (A)", run.header()}));
  run.write_manifest();
  return kExitOk;
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
  std::optional<double> alpha1;
  std::optional<double> alpha2;
};

int cmd_classify(const Common& c, const ClassifyArgs& a) {
  Run run = start_run("classify", c);
  double a1 = 0.0;
  double a2 = 0.0;
  if (!c.inputs.empty()) {
    auto j = ojson::parse(read_input(c.inputs.front()));
    a1 = j.at("alpha1").get<double>();
    a2 = j.at("alpha2").get<double>();
  }
  if (a.alpha1) a1 = *a.alpha1;
  if (a.alpha2) a2 = *a.alpha2;
  if (c.inputs.empty() && (!a.alpha1 || !a.alpha2)) {
    throw InputError("give --alpha1 and --alpha2, or --input optimum.json");
  }
  auto anchors = c.config.empty() ? memfract::AnchorConfig::defaults()
                                  : memfract::AnchorConfig::from_json_text(read_input(c.config));
  auto cls = memfract::classify_device(memfract::FracOrderPair(a1, a2), anchors);
  ojson out{{"alpha1", a1}, {"alpha2", a2}, {"label", cls.label}, {"regions", cls.regions},
            {"description", cls.region_descriptor}};
  run.write_json("classification.json", out);
  run.write_manifest();
  std::cout << cls.label << ": " << cls.region_descriptor << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"memfract: memfractance extraction from cyclic-voltammetry sweeps"};
  app.set_version_flag("--version", memfract::kVersion);
  app.require_subcommand(1);

  Common common;
  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "Fit polynomials to a sweep");
  add_common(fit, common);
  fit->add_option("--degree,-d", fit_args.degree, "Polynomial degree")->capture_default_str();
  fit->add_flag("--piecewise", fit_args.piecewise, "Two independent pieces split at the breakpoint");
  fit->add_option("--breakpoint", fit_args.breakpoint, "Breakpoint in seconds, or 'auto'")->capture_default_str();
  fit->add_flag("--no-average", fit_args.no_average, "Fit the first run instead of the run average");

  SearchArgs search_args;
  auto* search = app.add_subcommand("search", "Search (alpha1, alpha2) for the minimum-range memfractance");
  add_common(search, common);
  search->add_option("--grid", search_args.grid, "Alpha grid, e.g. 201x201");
  search->add_option("--t-points", search_args.t_points, "Points of the t-grid");
  search->add_option("--eps-t", search_args.eps_t, "Matched-zero tolerance (s)");
  search->add_option("--delta", search_args.delta, "Breakpoint exclusion half-width (s)");
  search->add_option("--fix-alpha2", search_args.fix_alpha2, "Hold alpha2 fixed");
  bool piecewise_flag = false;
  search->add_flag("--piecewise", piecewise_flag, "Accepted for clarity; piecewise inputs are detected");
  search->add_option("--anchors", search_args.anchors, "Anchor configuration for classification");

  ReconstructArgs rec_args;
  auto* rec = app.add_subcommand("reconstruct", "Reconstruct the current from a memfractance model");
  add_common(rec, common);
  rec->add_option("--alpha1", rec_args.alpha1);
  rec->add_option("--alpha2", rec_args.alpha2);
  rec->add_option("--optimum", rec_args.optimum, "optimum.json written by search");
  rec->add_option("--sweep", rec_args.sweep, "Measured sweep CSV to compare against");
  rec->add_option("--points", rec_args.points, "Output points when no sweep is given")->capture_default_str();

  SpikeArgs spike_args;
  auto* spk = app.add_subcommand("spikes", "Detect current spikes and bin their voltage intervals");
  add_common(spk, common);
  spk->add_option("--window", spike_args.cfg.window, "Median window (odd)")->capture_default_str();
  spk->add_option("--k", spike_args.cfg.k, "MAD multiplier")->capture_default_str();
  spk->add_option("--floor", spike_args.cfg.floor, "Absolute threshold floor (A)")->capture_default_str();
  spk->add_flag("--per-phase", spike_args.per_phase, "Also bin rising and falling phases separately");

  auto* sim = app.add_subcommand("simulate", "Generate a reference or synthetic sweep");
  add_common(sim, common);

  ClassifyArgs cls_args;
  auto* cls = app.add_subcommand("classify", "Place (alpha1, alpha2) among the mem-elements");
  add_common(cls, common);
  cls->add_option("--alpha1", cls_args.alpha1);
  cls->add_option("--alpha2", cls_args.alpha2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*fit) return cmd_fit(common, fit_args);
    if (*search) return cmd_search(common, search_args);
    if (*rec) return cmd_reconstruct(common, rec_args);
    if (*spk) return cmd_spikes(common, spike_args);
    if (*sim) return cmd_simulate(common);
    if (*cls) return cmd_classify(common, cls_args);
  } catch (const memfract::NoFeasibleCandidate& e) {
    std::cerr << "memfract: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const InputError& e) {
    std::cerr << "memfract: " << e.what() << '\n';
    return kExitInput;
  } catch (const memfract::ParseError& e) {
    std::cerr << "memfract: parse error: " << e.what() << '\n';
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "memfract: invalid JSON: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "memfract: " << e.what() << '\n';
    return kExitInput;
  } catch (const memfract::IoError& e) {
    std::cerr << "memfract: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "memfract: " << e.what() << '\n';
    return 1;
  }
  return kExitInput;
}
