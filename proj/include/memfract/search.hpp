#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "memfract/memfractance.hpp"

namespace memfract {

struct SearchConfig {
  int grid_alpha1 = 201;
  int grid_alpha2 = 201;
  double alpha_min = 0.0;
  double alpha_max = 2.0;
  int t_points = 2048;
  double eps_t = 0.05;
  double delta = MemfractanceModel::kDefaultDelta;
  double eps_den = MemfractanceModel::kDefaultEpsDen;
  double refine_tol = 1e-6;
  int max_refine_iter = 400;
  std::optional<double> fix_alpha2;
  unsigned threads = 0;  // 0: all available cores

  void validate() const;
  static SearchConfig from_json_text(const std::string& text);
  std::string to_json_text() const;
};

enum class CandidateKind { grid_cell, matched_couple };

struct SearchResult {
  FracOrderPair alphas{0.0, 0.0};
  double range = 0.0;
  MemfractanceCurve curve;
  CandidateKind start_kind = CandidateKind::grid_cell;
  FracOrderPair start{0.0, 0.0};
  double start_range = 0.0;
  std::size_t feasible_cells = 0;
  std::size_t feasible_couples = 0;
  int refine_iterations = 0;
  std::vector<double> alpha1_grid;
  std::vector<double> alpha2_grid;
  std::vector<ZeroLocus> numerator_loci;
  std::vector<ZeroLocus> denominator_loci;
  std::vector<MatchedCouple> couples;
};

/// No grid cell or matched couple gives a curve free of unmatched
/// singularities. `nearest()` lists the matched couples that came closest.
class NoFeasibleCandidate : public std::runtime_error {
 public:
  NoFeasibleCandidate(const std::string& what, std::vector<MatchedCouple> nearest)
      : std::runtime_error(what), nearest_(std::move(nearest)) {}
  const std::vector<MatchedCouple>& nearest() const { return nearest_; }

 private:
  std::vector<MatchedCouple> nearest_;
};

/// Two-stage minimization of the curve range over (alpha1, alpha2).
///
/// Stage one evaluates every cell of the alpha grid plus every matched-zero
/// couple; a candidate is feasible when each denominator zero on the t-grid
/// is matched by a numerator zero within eps_t. Stage two runs Nelder-Mead
/// from the best candidate (along the matched-zero curve when the start is a
/// couple). Results are independent of the thread count.
SearchResult search_optimal(const MemfractanceModel& model, const SearchConfig& cfg);

/// Range and feasibility of a single point, as used by the search.
struct PointEvaluation {
  bool feasible = false;
  double range = 0.0;
  std::size_t unmatched = 0;
};
PointEvaluation evaluate_point(const MemfractanceModel& model, const FracOrderPair& alphas,
                               const std::vector<double>& t_grid, double eps_t);

std::vector<double> uniform_grid(double lo, double hi, int n);

}  // namespace memfract
