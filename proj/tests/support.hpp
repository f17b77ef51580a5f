#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "memfract/polynomial.hpp"

namespace memfract::test {

inline std::string data_path(const std::string& rel) { return std::string(MEMFRACT_TEST_DATA) + "/" + rel; }

/// Random polynomial of degree <= max_degree whose values on [0, span] are O(1).
inline Polynomial random_polynomial(std::mt19937_64& rng, int max_degree, double span = 171.0) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int d = deg(rng);
  std::vector<double> c(d + 1);
  for (int j = 0; j <= d; ++j) c[j] = u(rng) / std::pow(span, j);
  return Polynomial(c);
}

inline double rel_err(double a, double b, double floor = 1e-300) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace memfract::test
