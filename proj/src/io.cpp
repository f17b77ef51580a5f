#include "memfract/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace memfract {

namespace {

using ojson = nlohmann::ordered_json;

std::vector<double> number_list(const ojson& j, const char* key) {
  if (!j.contains(key)) return {};
  const auto& a = j.at(key);
  if (!a.is_array()) throw std::invalid_argument(std::string("polynomial file: '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& x : a) {
    if (!x.is_number()) {
      throw std::invalid_argument(std::string("polynomial file: '") + key + "' must hold numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

Polynomial poly_from(const ojson& j, const char* key, const char* lo_key) {
  auto hi = number_list(j, key);
  if (hi.empty()) throw std::invalid_argument(std::string("polynomial file: missing '") + key + "'");
  auto lo = number_list(j, lo_key);
  return Polynomial(hi, lo);
}

ojson raw_numbers(const std::vector<double>& xs) {
  // Written through the shortest round-trip representation.
  ojson a = ojson::array();
  for (double x : xs) a.push_back(x);
  return a;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int k = 15; k >= 0; --k) {
    s[k] = digits[x & 0xf];
    x >>= 4;
  }
  return s;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

PolynomialFile parse_polynomial_json(const std::string& text) {
  PolynomialFile f;
  try {
    auto j = ojson::parse(text);
    if (!j.is_object()) throw std::invalid_argument("polynomial file: expected a JSON object");
    if (j.contains("basis") && j.at("basis").get<std::string>() != "monomial") {
      throw std::invalid_argument("polynomial file: only the monomial basis is supported");
    }
    if (j.contains("quantity")) f.quantity = j.at("quantity").get<std::string>();
    if (!j.contains("domain")) throw std::invalid_argument("polynomial file: missing 'domain'");
    auto dom = number_list(j, "domain");
    if (dom.size() != 2 || !(dom[0] < dom[1])) {
      throw std::invalid_argument("polynomial file: 'domain' must be [t0, t1] with t0 < t1");
    }
    f.domain = {dom[0], dom[1]};
    if (j.contains("T")) {
      double T = j.at("T").get<double>();
      f.piecewise.emplace(poly_from(j, "left", "left_lo"), poly_from(j, "right", "right_lo"), T,
                          f.domain[1]);
    } else {
      f.global = poly_from(j, "coeffs", "coeffs_lo");
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("polynomial file: ") + e.what());
  }
  return f;
}

std::string polynomial_json(const Polynomial& p, std::array<double, 2> domain,
                            const std::string& quantity) {
  ojson j;
  j["basis"] = "monomial";
  if (!quantity.empty()) j["quantity"] = quantity;
  j["domain"] = {domain[0], domain[1]};
  j["coeffs"] = raw_numbers(p.coeffs());
  if (p.has_low_parts()) j["coeffs_lo"] = raw_numbers(p.coeffs_lo());
  return j.dump(2);
}

std::string piecewise_json(const PiecewisePolynomial& p, std::array<double, 2> domain,
                           const std::string& quantity) {
  ojson j;
  j["basis"] = "monomial";
  if (!quantity.empty()) j["quantity"] = quantity;
  j["domain"] = {domain[0], domain[1]};
  j["T"] = p.breakpoint();
  j["left"] = raw_numbers(p.left().coeffs());
  if (p.left().has_low_parts()) j["left_lo"] = raw_numbers(p.left().coeffs_lo());
  j["right"] = raw_numbers(p.right().coeffs());
  if (p.right().has_low_parts()) j["right_lo"] = raw_numbers(p.right().coeffs_lo());
  return j.dump(2);
}

}  // namespace memfract
