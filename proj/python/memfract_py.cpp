#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "memfract/classify.hpp"
#include "memfract/fractional.hpp"
#include "memfract/io.hpp"
#include "memfract/memfractance.hpp"
#include "memfract/pipeline.hpp"
#include "memfract/polyfit.hpp"
#include "memfract/reference_models.hpp"
#include "memfract/search.hpp"
#include "memfract/special.hpp"
#include "memfract/spikes.hpp"
#include "memfract/sweep.hpp"
#include "memfract/version.hpp"

namespace py = pybind11;
using namespace memfract;

namespace {

SweepSeries make_series(const std::vector<double>& t, const std::vector<double>& v,
                        const std::vector<double>& i, const SweepConfig& cfg, const std::string& run_id) {
  if (t.size() != v.size() || t.size() != i.size()) {
    throw std::invalid_argument("t, v and i must have the same length");
  }
  std::vector<SweepRecord> r(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) r[k] = {t[k], v[k], i[k]};
  return SweepSeries(run_id, cfg, std::move(r));
}

py::dict series_dict(const SweepSeries& s) {
  py::dict d;
  d["run_id"] = s.run_id();
  d["t"] = s.times();
  d["v"] = s.voltages();
  d["i"] = s.currents();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Memfractance extraction from cyclic-voltammetry sweeps";
  m.attr("__version__") = kVersion;

  py::register_exception<NoFeasibleCandidate>(m, "NoFeasibleCandidate");
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("gamma", &memfract::gamma, py::arg("x"));
  m.def("recip_gamma", &recip_gamma, py::arg("x"));

  py::class_<Polynomial>(m, "Polynomial")
      .def(py::init<std::vector<double>>(), py::arg("coeffs"))
      .def("__call__", &Polynomial::operator(), py::arg("t"))
      .def_property_readonly("degree", &Polynomial::degree)
      .def_property_readonly("coeffs", &Polynomial::coeffs)
      .def_property_readonly("coeffs_lo", &Polynomial::coeffs_lo)
      .def("derivative", &Polynomial::derivative)
      .def("integrate", [](const Polynomial& p) { return integrate_polynomial(p); });

  py::class_<PiecewisePolynomial>(m, "PiecewisePolynomial")
      .def(py::init<Polynomial, Polynomial, double, double>(), py::arg("left"), py::arg("right"),
           py::arg("breakpoint"), py::arg("t_end"))
      .def("__call__", &PiecewisePolynomial::operator(), py::arg("t"))
      .def_property_readonly("left", &PiecewisePolynomial::left)
      .def_property_readonly("right", &PiecewisePolynomial::right)
      .def_property_readonly("breakpoint", &PiecewisePolynomial::breakpoint);

  m.def("load_polynomial_file", [](const std::string& path) -> py::object {
    auto f = parse_polynomial_json(read_text_file(path));
    if (f.piecewise) return py::cast(*f.piecewise);
    return py::cast(*f.global);
  }, py::arg("path"));

  py::class_<FitStats>(m, "FitStats")
      .def_readonly("sse", &FitStats::sse)
      .def_readonly("ssr", &FitStats::ssr)
      .def_readonly("sst", &FitStats::sst)
      .def_readonly("r_squared", &FitStats::r_squared)
      .def_static("from_sums", &FitStats::from_sums, py::arg("sse"), py::arg("ssr"));

  m.def("fit_polynomial", [](const std::vector<double>& t, const std::vector<double>& y, int degree) {
    auto f = fit_polynomial(t, y, degree);
    return py::make_tuple(f.poly, f.stats);
  }, py::arg("t"), py::arg("y"), py::arg("degree"));

  m.def("rl_derivative", [](const Polynomial& p, double alpha, double t) {
    return RlPolyDerivative(p, alpha)(t);
  }, py::arg("poly"), py::arg("alpha"), py::arg("t"));
  m.def("gl_derivative", &gl_derivative_numeric, py::arg("f"), py::arg("alpha"), py::arg("t"),
        py::arg("h") = 1e-4);

  py::class_<FracOrderPair>(m, "FracOrderPair")
      .def(py::init<double, double>(), py::arg("alpha1"), py::arg("alpha2"))
      .def_property_readonly("alpha1", &FracOrderPair::alpha1)
      .def_property_readonly("alpha2", &FracOrderPair::alpha2)
      .def("__repr__", [](const FracOrderPair& a) {
        return "FracOrderPair(" + format_double(a.alpha1()) + ", " + format_double(a.alpha2()) + ")";
      });

  py::class_<MemfractanceModel>(m, "MemfractanceModel")
      .def_static("from_global", &model_from_global, py::arg("voltage"), py::arg("current"), py::arg("t_end"))
      .def_static("from_piecewise", &model_from_piecewise, py::arg("voltage"), py::arg("current"),
                  py::arg("delta") = MemfractanceModel::kDefaultDelta)
      .def("eval", [](const MemfractanceModel& mm, double a1, double a2, double t) {
        return mm.eval(FracOrderPair(a1, a2), t);
      }, py::arg("alpha1"), py::arg("alpha2"), py::arg("t"))
      .def("curve", [](const MemfractanceModel& mm, double a1, double a2, int n) {
        auto c = mm.curve(FracOrderPair(a1, a2), mm.default_grid(n));
        return py::make_tuple(c.t_grid, c.values);
      }, py::arg("alpha1"), py::arg("alpha2"), py::arg("t_points") = 2048)
      .def_property_readonly("t_end", &MemfractanceModel::t_end);

  m.def("search", [](const MemfractanceModel& mm, int grid, int t_points, double eps_t,
                     std::optional<double> fix_alpha2, unsigned threads) {
    SearchConfig cfg;
    cfg.grid_alpha1 = cfg.grid_alpha2 = grid;
    cfg.t_points = t_points;
    cfg.eps_t = eps_t;
    cfg.fix_alpha2 = fix_alpha2;
    cfg.threads = threads;
    cfg.validate();
    SearchResult r;
    {
      py::gil_scoped_release release;
      r = search_optimal(mm, cfg);
    }
    py::dict d;
    d["alpha1"] = r.alphas.alpha1();
    d["alpha2"] = r.alphas.alpha2();
    d["range"] = r.range;
    d["feasible_cells"] = r.feasible_cells;
    d["feasible_couples"] = r.feasible_couples;
    return d;
  }, py::arg("model"), py::arg("grid") = 201, py::arg("t_points") = 2048, py::arg("eps_t") = 0.05,
     py::arg("fix_alpha2") = py::none(), py::arg("threads") = 0);

  m.def("classify", [](double a1, double a2) {
    auto c = classify_device(FracOrderPair(a1, a2), AnchorConfig::defaults());
    return py::make_tuple(c.label, c.region_descriptor);
  }, py::arg("alpha1"), py::arg("alpha2"));

  py::class_<SweepConfig>(m, "SweepConfig")
      .def(py::init<double, double, double>(), py::arg("v_min") = -1.0, py::arg("v_max") = 1.0,
           py::arg("v_step") = 0.01);

  m.def("detect_spikes", [](const std::vector<double>& t, const std::vector<double>& v,
                            const std::vector<double>& i, int window, double k, double floor) {
    SpikeConfig cfg{window, k, floor};
    auto s = detect_spikes(make_series(t, v, i, SweepConfig(-1, 1, 0.01), "py"), cfg);
    std::vector<std::size_t> idx;
    for (const auto& e : s) idx.push_back(e.index);
    return idx;
  }, py::arg("t"), py::arg("v"), py::arg("i"), py::arg("window") = 11, py::arg("k") = 4.0,
     py::arg("floor") = 1e-10);

  m.def("simulate_ideal_memristor", [](double amplitude, double period, int samples, int cycles) {
    Waveform w;
    w.shape = Waveform::Shape::sine;
    w.amplitude = amplitude;
    w.period = period;
    w.samples = samples;
    w.cycles = cycles;
    return series_dict(simulate_ideal_memristor(IdealMemristorParams{}, w));
  }, py::arg("amplitude") = 1.0, py::arg("period") = 1.0, py::arg("samples") = 256, py::arg("cycles") = 1);

  m.def("synth_memfractor", [](double a1, double a2, double f_const, double noise, std::uint64_t seed) {
    SyntheticDeviceSpec spec;
    spec.alphas = FracOrderPair(a1, a2);
    spec.f_const = f_const;
    return series_dict(synth_memfractor_sweep(spec, noise, seed));
  }, py::arg("alpha1"), py::arg("alpha2"), py::arg("f_const") = 1000.0, py::arg("noise") = 0.0,
     py::arg("seed") = 0);
}
