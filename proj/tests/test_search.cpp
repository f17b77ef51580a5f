#include <doctest.h>

#include "memfract/search.hpp"
#include "memfract/pipeline.hpp"
#include "support.hpp"

using namespace memfract;

namespace {

// Positive current, so the (1,1) quotient v/i stays finite.
MemfractanceModel easy_model() {
  Polynomial v(std::vector<double>{0.2, 0.3, -0.02});
  Polynomial i(std::vector<double>{1e-9, 2e-10, -1e-11});
  return model_from_global(v, i, 10.0);
}

SearchConfig small_config() {
  SearchConfig cfg;
  cfg.grid_alpha1 = cfg.grid_alpha2 = 21;
  cfg.t_points = 256;
  return cfg;
}

}  // namespace

TEST_CASE("config validation and json") {
  SearchConfig cfg;
  cfg.grid_alpha1 = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  auto back = SearchConfig::from_json_text(small_config().to_json_text());
  CHECK(back.grid_alpha1 == 21);
  CHECK(back.t_points == 256);
  CHECK_THROWS(SearchConfig::from_json_text(R"({"grid":[0,5]})"));
}

TEST_CASE("search result is independent of the thread count") {
  auto model = easy_model();
  auto cfg = small_config();
  cfg.threads = 1;
  auto a = search_optimal(model, cfg);
  cfg.threads = 4;
  auto b = search_optimal(model, cfg);
  CHECK(a.alphas == b.alphas);
  CHECK(a.range == b.range);
  CHECK(a.curve.values.size() == b.curve.values.size());
}

TEST_CASE("search result is a local minimum") {
  auto model = easy_model();
  auto cfg = small_config();
  auto r = search_optimal(model, cfg);
  auto grid = model.default_grid(cfg.t_points);
  const double h = 1e-3;
  for (auto [d1, d2] : {std::pair{h, 0.0}, {-h, 0.0}, {0.0, h}, {0.0, -h}}) {
    double a1 = r.alphas.alpha1() + d1, a2 = r.alphas.alpha2() + d2;
    if (a1 < 0 || a1 > 2 || a2 < 0 || a2 > 2) continue;
    auto p = evaluate_point(model, FracOrderPair(a1, a2), grid, cfg.eps_t);
    if (p.feasible) CHECK(r.range <= p.range * (1 + 1e-12));
  }
}

TEST_CASE("fixed alpha2 is honoured") {
  auto cfg = small_config();
  cfg.fix_alpha2 = 1.0;
  auto r = search_optimal(easy_model(), cfg);
  CHECK(r.alphas.alpha2() == 1.0);
}

TEST_CASE("zero charge is infeasible") {
  auto model = model_from_global(Polynomial(std::vector<double>{1.0}), Polynomial(), 10.0);
  auto cfg = small_config();
  cfg.grid_alpha1 = cfg.grid_alpha2 = 3;
  CHECK_THROWS_AS(search_optimal(model, cfg), NoFeasibleCandidate);
}
