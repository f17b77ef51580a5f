#include "memfract/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "memfract/parallel.hpp"

namespace memfract {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool all_matched(const std::vector<double>& den_zeros, const std::vector<double>& num_zeros,
                 double eps_t, std::size_t* unmatched = nullptr) {
  std::size_t missing = 0;
  for (double z : den_zeros) {
    auto it = std::lower_bound(num_zeros.begin(), num_zeros.end(), z - eps_t);
    if (it == num_zeros.end() || *it > z + eps_t) ++missing;
  }
  if (unmatched) *unmatched = missing;
  return missing == 0;
}

bool has_tiny(const std::vector<double>& den, double eps_den) {
  return std::any_of(den.begin(), den.end(),
                     [&](double d) { return !std::isnan(d) && !(std::abs(d) >= eps_den); });
}

double quotient_range(const std::vector<double>& num, const std::vector<double>& den) {
  double lo = kInf;
  double hi = -kInf;
  std::size_t n = 0;
  for (std::size_t k = 0; k < num.size(); ++k) {
    if (std::isnan(num[k]) || std::isnan(den[k])) continue;
    double q = num[k] / den[k];
    if (!std::isfinite(q)) return kInf;
    lo = std::min(lo, q);
    hi = std::max(hi, q);
    ++n;
  }
  return n >= 2 ? hi - lo : kInf;
}

/// Nelder-Mead in 1 or 2 dimensions. Stops when the simplex diameter drops
/// below `tol` or after `max_iter` iterations.
struct SimplexResult {
  std::vector<double> x;
  double f = kInf;
  int iterations = 0;
};

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x0, double step, double tol, int max_iter) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> pts{x0};
  for (std::size_t d = 0; d < n; ++d) {
    auto p = x0;
    p[d] += step;
    pts.push_back(p);
  }
  std::vector<double> fv;
  for (const auto& p : pts) fv.push_back(f(p));

  auto diameter = [&] {
    double dmax = 0.0;
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        double s = 0.0;
        for (std::size_t d = 0; d < n; ++d) s += (pts[a][d] - pts[b][d]) * (pts[a][d] - pts[b][d]);
        dmax = std::max(dmax, std::sqrt(s));
      }
    }
    return dmax;
  };
  auto affine = [&](const std::vector<double>& c, const std::vector<double>& p, double k) {
    std::vector<double> out(n);
    for (std::size_t d = 0; d < n; ++d) out[d] = c[d] + k * (p[d] - c[d]);
    return out;
  };

  int it = 0;
  for (; it < max_iter && diameter() >= tol; ++it) {
    std::vector<std::size_t> order(pts.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    std::vector<std::vector<double>> p2;
    std::vector<double> f2;
    for (auto k : order) {
      p2.push_back(pts[k]);
      f2.push_back(fv[k]);
    }
    pts = std::move(p2);
    fv = std::move(f2);

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[k][d] / static_cast<double>(n);
    }
    const auto& worst = pts.back();
    auto xr = affine(centroid, worst, -1.0);
    double fr = f(xr);
    if (fr < fv.front()) {
      auto xe = affine(centroid, worst, -2.0);
      double fe = f(xe);
      if (fe < fr) {
        pts.back() = xe;
        fv.back() = fe;
      } else {
        pts.back() = xr;
        fv.back() = fr;
      }
      continue;
    }
    if (fr < fv[n - 1]) {
      pts.back() = xr;
      fv.back() = fr;
      continue;
    }
    bool outside = fr < fv.back();
    auto xc = outside ? affine(centroid, worst, -0.5) : affine(centroid, worst, 0.5);
    double fc = f(xc);
    if (fc < (outside ? fr : fv.back())) {
      pts.back() = xc;
      fv.back() = fc;
      continue;
    }
    for (std::size_t k = 1; k < pts.size(); ++k) {
      pts[k] = affine(pts[0], pts[k], 0.5);
      fv[k] = f(pts[k]);
    }
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    if (fv[k] < fv[best]) best = k;
  }
  return SimplexResult{pts[best], fv[best], it};
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("grid needs at least one point");
  if (n == 1) return {lo};
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) g[k] = k + 1 == n ? hi : lo + (hi - lo) * k / (n - 1);
  return g;
}

void SearchConfig::validate() const {
  if (grid_alpha1 < 2 || grid_alpha2 < 2) throw std::invalid_argument("alpha grid needs >= 2 points per axis");
  if (!(alpha_min >= 0.0) || !(alpha_max <= 2.0) || !(alpha_min < alpha_max)) {
    throw std::invalid_argument("alpha range must satisfy 0 <= min < max <= 2");
  }
  if (t_points < 16) throw std::invalid_argument("t-grid needs >= 16 points");
  if (!(eps_t > 0.0)) throw std::invalid_argument("eps_t must be > 0");
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be >= 0");
  if (!(eps_den >= 0.0)) throw std::invalid_argument("eps_den must be >= 0");
  if (!(refine_tol > 0.0)) throw std::invalid_argument("refine_tol must be > 0");
  if (max_refine_iter < 0) throw std::invalid_argument("max_refine_iter must be >= 0");
  if (fix_alpha2 && !(*fix_alpha2 >= 0.0 && *fix_alpha2 <= 2.0)) {
    throw std::invalid_argument("fix_alpha2 must lie in [0, 2]");
  }
}

SearchConfig SearchConfig::from_json_text(const std::string& text) {
  SearchConfig c;
  try {
    auto j = nlohmann::json::parse(text);
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      if (g.is_array()) {
        c.grid_alpha1 = g.at(0).get<int>();
        c.grid_alpha2 = g.at(1).get<int>();
      } else {
        c.grid_alpha1 = c.grid_alpha2 = g.get<int>();
      }
    }
    if (j.contains("alpha_range")) {
      c.alpha_min = j.at("alpha_range").at(0).get<double>();
      c.alpha_max = j.at("alpha_range").at(1).get<double>();
    }
    if (j.contains("t_points")) c.t_points = j.at("t_points").get<int>();
    if (j.contains("eps_t")) c.eps_t = j.at("eps_t").get<double>();
    if (j.contains("delta")) c.delta = j.at("delta").get<double>();
    if (j.contains("eps_den")) c.eps_den = j.at("eps_den").get<double>();
    if (j.contains("refine_tol")) c.refine_tol = j.at("refine_tol").get<double>();
    if (j.contains("max_refine_iter")) c.max_refine_iter = j.at("max_refine_iter").get<int>();
    if (j.contains("fix_alpha2") && !j.at("fix_alpha2").is_null()) {
      c.fix_alpha2 = j.at("fix_alpha2").get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("search config: ") + e.what());
  }
  c.validate();
  return c;
}

std::string SearchConfig::to_json_text() const {
  nlohmann::ordered_json j;
  j["grid"] = {grid_alpha1, grid_alpha2};
  j["alpha_range"] = {alpha_min, alpha_max};
  j["t_points"] = t_points;
  j["eps_t"] = eps_t;
  j["delta"] = delta;
  j["eps_den"] = eps_den;
  j["refine_tol"] = refine_tol;
  j["max_refine_iter"] = max_refine_iter;
  j["fix_alpha2"] = fix_alpha2 ? nlohmann::ordered_json(*fix_alpha2) : nlohmann::ordered_json();
  return j.dump(2);
}

PointEvaluation evaluate_point(const MemfractanceModel& model, const FracOrderPair& alphas,
                               const std::vector<double>& t_grid, double eps_t) {
  PointEvaluation e;
  auto num = model.sample_numerator(alphas.alpha1(), t_grid);
  auto den = model.sample_denominator(alphas.alpha2(), t_grid);
  auto dz = model.denominator_zeros(alphas.alpha2(), t_grid);
  auto nz = model.numerator_zeros(alphas.alpha1(), t_grid);
  bool matched = all_matched(dz, nz, eps_t, &e.unmatched);
  bool tiny = has_tiny(den, model.eps_den());
  e.range = quotient_range(num, den);
  e.feasible = matched && !tiny && std::isfinite(e.range);
  return e;
}

SearchResult search_optimal(const MemfractanceModel& model_in, const SearchConfig& cfg) {
  cfg.validate();
  MemfractanceModel model = model_in;
  model.set_eps_den(cfg.eps_den);
  if (model.charge().is_zero()) {
    throw NoFeasibleCandidate("charge polynomial is identically zero: the denominator vanishes everywhere", {});
  }
  const unsigned threads = cfg.threads == 0 ? default_thread_count() : cfg.threads;
  const auto grid = model.default_grid(cfg.t_points);

  SearchResult res;
  res.alpha1_grid = uniform_grid(cfg.alpha_min, cfg.alpha_max, cfg.grid_alpha1);
  res.alpha2_grid = cfg.fix_alpha2 ? std::vector<double>{*cfg.fix_alpha2}
                                   : uniform_grid(cfg.alpha_min, cfg.alpha_max, cfg.grid_alpha2);
  const auto& a1 = res.alpha1_grid;
  const auto& a2 = res.alpha2_grid;

  std::vector<std::vector<double>> num_rows(a1.size()), den_rows(a2.size());
  res.numerator_loci.resize(a1.size());
  res.denominator_loci.resize(a2.size());
  std::vector<char> den_tiny(a2.size(), 0);
  parallel_for(a1.size(), threads, [&](std::size_t i) {
    num_rows[i] = model.sample_numerator(a1[i], grid);
    res.numerator_loci[i] = ZeroLocus{a1[i], model.numerator_zeros(a1[i], grid)};
  });
  parallel_for(a2.size(), threads, [&](std::size_t j) {
    den_rows[j] = model.sample_denominator(a2[j], grid);
    res.denominator_loci[j] = ZeroLocus{a2[j], model.denominator_zeros(a2[j], grid)};
    den_tiny[j] = has_tiny(den_rows[j], model.eps_den()) ? 1 : 0;
  });

  // Stage one: grid cells, indexed i * |a2| + j.
  std::vector<double> cell_range(a1.size() * a2.size(), kInf);
  parallel_for(a1.size(), threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < a2.size(); ++j) {
      if (den_tiny[j]) continue;
      if (!all_matched(res.denominator_loci[j].zeros, res.numerator_loci[i].zeros, cfg.eps_t)) continue;
      cell_range[i * a2.size() + j] = quotient_range(num_rows[i], den_rows[j]);
    }
  });

  res.couples = matched_zero_couples(model, a1, a2, grid, cfg.eps_t, threads);
  std::vector<PointEvaluation> couple_eval(res.couples.size());
  parallel_for(res.couples.size(), threads, [&](std::size_t k) {
    const auto& c = res.couples[k];
    couple_eval[k] = evaluate_point(model, FracOrderPair(c.alpha1, c.alpha2), grid, cfg.eps_t);
  });

  double best = kInf;
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t best_cell = npos;
  std::size_t best_couple = npos;
  for (std::size_t k = 0; k < cell_range.size(); ++k) {
    if (std::isfinite(cell_range[k])) {
      ++res.feasible_cells;
      if (cell_range[k] < best) {
        best = cell_range[k];
        best_cell = k;
      }
    }
  }
  for (std::size_t k = 0; k < couple_eval.size(); ++k) {
    if (couple_eval[k].feasible) {
      ++res.feasible_couples;
      if (couple_eval[k].range < best) {
        best = couple_eval[k].range;
        best_couple = k;
        best_cell = npos;
      }
    }
  }

  if (best_cell == npos && best_couple == npos) {
    std::vector<std::size_t> idx(res.couples.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
      if (couple_eval[x].unmatched != couple_eval[y].unmatched) {
        return couple_eval[x].unmatched < couple_eval[y].unmatched;
      }
      return couple_eval[x].range < couple_eval[y].range;
    });
    std::vector<MatchedCouple> nearest;
    for (std::size_t k = 0; k < idx.size() && k < 10; ++k) nearest.push_back(res.couples[idx[k]]);
    std::ostringstream msg;
    msg << "no singularity-free candidate among " << cell_range.size() << " grid cells and "
        << res.couples.size() << " matched-zero couples";
    throw NoFeasibleCandidate(msg.str(), std::move(nearest));
  }

  const double h1 = a1.size() > 1 ? a1[1] - a1[0] : 0.01;
  const double h2 = a2.size() > 1 ? a2[1] - a2[0] : 0.01;
  auto in_box = [&](double x) { return x >= cfg.alpha_min && x <= cfg.alpha_max; };
  auto point_objective = [&](double x1, double x2) {
    if (!in_box(x1) || !(x2 >= 0.0 && x2 <= 2.0)) return kInf;
    auto e = evaluate_point(model, FracOrderPair(x1, x2), grid, cfg.eps_t);
    return e.feasible ? e.range : kInf;
  };

  FracOrderPair opt(0.0, 0.0);
  if (best_cell != npos) {
    const std::size_t i = best_cell / a2.size();
    const std::size_t j = best_cell % a2.size();
    res.start_kind = CandidateKind::grid_cell;
    res.start = FracOrderPair(a1[i], a2[j]);
    res.start_range = best;
    if (cfg.fix_alpha2) {
      auto r = nelder_mead([&](const std::vector<double>& x) { return point_objective(x[0], a2[j]); },
                           {a1[i]}, h1, cfg.refine_tol, cfg.max_refine_iter);
      res.refine_iterations = r.iterations;
      opt = r.f <= best ? FracOrderPair(r.x[0], a2[j]) : res.start;
    } else {
      auto r = nelder_mead(
          [&](const std::vector<double>& x) { return point_objective(x[0], x[1]); },
          {a1[i], a2[j]}, std::min(h1, h2), cfg.refine_tol, cfg.max_refine_iter);
      res.refine_iterations = r.iterations;
      opt = r.f <= best ? FracOrderPair(r.x[0], r.x[1]) : res.start;
    }
  } else {
    const MatchedCouple start = res.couples[best_couple];
    res.start_kind = CandidateKind::matched_couple;
    res.start = FracOrderPair(start.alpha1, start.alpha2);
    res.start_range = best;
    opt = res.start;
    if (!cfg.fix_alpha2) {
      // Follow the matched-zero curve: for each alpha2, track the denominator
      // zero nearest the starting t* and solve for the alpha1 matching it.
      auto matched_alpha1 = [&](double x2) -> std::optional<double> {
        if (!(x2 >= 0.0 && x2 <= 2.0)) return std::nullopt;
        auto dz = model.denominator_zeros(x2, grid);
        if (dz.empty()) return std::nullopt;
        double z = *std::min_element(dz.begin(), dz.end(), [&](double p, double q) {
          return std::abs(p - start.t_star) < std::abs(q - start.t_star);
        });
        auto n_at = [&](double x1) { return model.flux().at(x1)(z); };
        std::optional<double> pick;
        double prev = n_at(a1[0]);
        for (std::size_t i = 0; i + 1 < a1.size(); ++i) {
          double next = n_at(a1[i + 1]);
          if (std::isfinite(prev) && std::isfinite(next) && (prev > 0.0) != (next > 0.0)) {
            double lo = a1[i];
            double hi = a1[i + 1];
            double flo = prev;
            for (int k = 0; k < 80 && hi - lo > 1e-13; ++k) {
              double m = 0.5 * (lo + hi);
              double fm = n_at(m);
              if ((fm > 0.0) == (flo > 0.0)) {
                lo = m;
                flo = fm;
              } else {
                hi = m;
              }
            }
            double root = 0.5 * (lo + hi);
            if (!pick || std::abs(root - start.alpha1) < std::abs(*pick - start.alpha1)) pick = root;
          }
          prev = next;
        }
        return pick;
      };
      auto r = nelder_mead(
          [&](const std::vector<double>& x) {
            auto x1 = matched_alpha1(x[0]);
            return x1 ? point_objective(*x1, x[0]) : kInf;
          },
          {start.alpha2}, h2, cfg.refine_tol, cfg.max_refine_iter);
      res.refine_iterations = r.iterations;
      if (r.f <= best) {
        if (auto x1 = matched_alpha1(r.x[0])) opt = FracOrderPair(*x1, r.x[0]);
      }
    }
  }

  res.alphas = opt;
  res.curve = model.curve(opt, grid, cfg.eps_t);
  res.range = range_objective(res.curve);
  return res;
}

}  // namespace memfract
