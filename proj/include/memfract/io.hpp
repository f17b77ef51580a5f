#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "memfract/polynomial.hpp"

namespace memfract {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// 64-bit FNV-1a, hex encoded.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t x);

/// Shortest decimal that parses back to the same double.
std::string format_double(double x);

/// A polynomial file: {"basis":"monomial","domain":[t0,t1],"coeffs":[...]}
/// with optional "coeffs_lo" low parts, or the piecewise form with "T",
/// "left", "right" (and optional "left_lo"/"right_lo").
struct PolynomialFile {
  std::string quantity;  // free-form, e.g. "voltage"
  std::array<double, 2> domain{0.0, 0.0};
  std::optional<Polynomial> global;
  std::optional<PiecewisePolynomial> piecewise;
};

PolynomialFile parse_polynomial_json(const std::string& text);
std::string polynomial_json(const Polynomial& p, std::array<double, 2> domain,
                            const std::string& quantity = "");
std::string piecewise_json(const PiecewisePolynomial& p, std::array<double, 2> domain,
                           const std::string& quantity = "");

}  // namespace memfract
