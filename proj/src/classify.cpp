#include "memfract/classify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace memfract {

namespace {

using Point = std::array<double, 2>;

double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double distance_to_segment(const Point& p, const Point& a, const Point& b) {
  double dx = b[0] - a[0];
  double dy = b[1] - a[1];
  double len2 = dx * dx + dy * dy;
  double s = len2 > 0.0 ? ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  double ex = a[0] + s * dx - p[0];
  double ey = a[1] + s * dy - p[1];
  return std::hypot(ex, ey);
}

bool in_triangle(const Point& p, const Point& a, const Point& b, const Point& c, double tol) {
  double d1 = cross(a, b, p);
  double d2 = cross(b, c, p);
  double d3 = cross(c, a, p);
  bool neg = d1 < 0 || d2 < 0 || d3 < 0;
  bool pos = d1 > 0 || d2 > 0 || d3 > 0;
  if (!(neg && pos)) return true;
  return distance_to_segment(p, a, b) <= tol || distance_to_segment(p, b, c) <= tol ||
         distance_to_segment(p, c, a) <= tol;
}

std::array<double, 3> barycentric(const Point& p, const Point& a, const Point& b, const Point& c) {
  double area = cross(a, b, c);
  return {cross(b, c, p) / area, cross(c, a, p) / area, cross(a, b, p) / area};
}

std::string join(const std::vector<std::string>& names, const char* sep) {
  std::string out;
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (k) out += sep;
    out += names[k];
  }
  return out;
}

}  // namespace

AnchorConfig AnchorConfig::defaults() {
  AnchorConfig c;
  c.anchors = {{"memristor", {1.0, 1.0}},
               {"memcapacitor", {1.0, 0.0}},
               {"meminductor", {0.0, 1.0}},
               {"second_order_memristor", {2.0, 2.0}},
               {"capacitor", {2.0, 1.0}}};
  c.regions = {{{"memristor", "memcapacitor", "capacitor"}},
               {{"memristor", "memcapacitor", "meminductor"}},
               {{"memristor", "capacitor", "second_order_memristor"}},
               {{"memristor", "meminductor", "second_order_memristor"}},
               {{"memristor", "capacitor"}},
               {{"memristor", "memcapacitor"}},
               {{"memristor", "meminductor"}},
               {{"memristor", "second_order_memristor"}}};
  return c;
}

const AnchorConfig::Anchor& AnchorConfig::anchor(const std::string& name) const {
  for (const auto& a : anchors) {
    if (a.name == name) return a;
  }
  throw std::invalid_argument("anchor config: unknown anchor '" + name + "'");
}

void AnchorConfig::validate() const {
  if (anchors.empty()) throw std::invalid_argument("anchor config: no anchors");
  std::set<std::string> names;
  for (const auto& a : anchors) {
    if (a.name.empty()) throw std::invalid_argument("anchor config: empty anchor name");
    if (!names.insert(a.name).second) {
      throw std::invalid_argument("anchor config: duplicate anchor '" + a.name + "'");
    }
    if (!std::isfinite(a.point[0]) || !std::isfinite(a.point[1])) {
      throw std::invalid_argument("anchor config: non-finite coordinates for '" + a.name + "'");
    }
    if (a.point[0] < 0.0 || a.point[0] > 2.0 || a.point[1] < 0.0 || a.point[1] > 2.0) {
      throw std::invalid_argument("anchor config: '" + a.name + "' lies outside [0, 2] x [0, 2]");
    }
  }
  for (const auto& r : regions) {
    if (r.vertices.size() != 2 && r.vertices.size() != 3) {
      throw std::invalid_argument("anchor config: regions need 2 or 3 vertices");
    }
    for (const auto& v : r.vertices) anchor(v);
  }
  if (!(anchor_tol >= 0.0) || !(region_tol >= 0.0)) {
    throw std::invalid_argument("anchor config: tolerances must be >= 0");
  }
}

AnchorConfig AnchorConfig::from_json_text(const std::string& text) {
  AnchorConfig c;
  try {
    auto j = nlohmann::ordered_json::parse(text);
    if (!j.is_object() || !j.contains("anchors") || !j.at("anchors").is_object()) {
      throw std::invalid_argument("anchor config: expected an object with an \"anchors\" map");
    }
    for (const auto& [name, xy] : j.at("anchors").items()) {
      if (!xy.is_array() || xy.size() != 2) {
        throw std::invalid_argument("anchor config: '" + name + "' must be [alpha1, alpha2]");
      }
      c.anchors.push_back({name, {xy.at(0).get<double>(), xy.at(1).get<double>()}});
    }
    if (j.contains("regions")) {
      for (const auto& r : j.at("regions")) {
        c.regions.push_back({r.get<std::vector<std::string>>()});
      }
    }
    if (j.contains("anchor_tol")) c.anchor_tol = j.at("anchor_tol").get<double>();
    if (j.contains("region_tol")) c.region_tol = j.at("region_tol").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("anchor config: ") + e.what());
  }
  c.validate();
  return c;
}

std::string AnchorConfig::to_json_text() const {
  nlohmann::ordered_json j;
  j["anchors"] = nlohmann::ordered_json::object();
  for (const auto& a : anchors) j["anchors"][a.name] = {a.point[0], a.point[1]};
  j["regions"] = nlohmann::ordered_json::array();
  for (const auto& r : regions) j["regions"].push_back(r.vertices);
  j["anchor_tol"] = anchor_tol;
  j["region_tol"] = region_tol;
  return j.dump(2);
}

DeviceClass classify_device(const FracOrderPair& alphas, const AnchorConfig& cfg) {
  cfg.validate();
  DeviceClass out;
  const Point p{alphas.alpha1(), alphas.alpha2()};
  out.point = p;

  for (const auto& a : cfg.anchors) {
    if (std::hypot(p[0] - a.point[0], p[1] - a.point[1]) <= cfg.anchor_tol) {
      out.label = a.name;
      out.region_descriptor = "anchor " + a.name;
      return out;
    }
  }
  out.label = "mixed";

  for (const auto& r : cfg.regions) {
    const auto& v = r.vertices;
    bool inside = false;
    if (v.size() == 2) {
      inside = distance_to_segment(p, cfg.anchor(v[0]).point, cfg.anchor(v[1]).point) <= cfg.region_tol;
    } else {
      inside = in_triangle(p, cfg.anchor(v[0]).point, cfg.anchor(v[1]).point,
                           cfg.anchor(v[2]).point, cfg.region_tol);
    }
    if (inside) out.regions.push_back((v.size() == 2 ? "segment " : "triangle ") + join(v, "-"));
  }

  // Barycentric weights against the three nearest non-collinear anchors.
  std::vector<std::size_t> idx(cfg.anchors.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const auto& pa = cfg.anchors[a].point;
    const auto& pb = cfg.anchors[b].point;
    return std::hypot(p[0] - pa[0], p[1] - pa[1]) < std::hypot(p[0] - pb[0], p[1] - pb[1]);
  });
  std::ostringstream desc;
  desc << std::setprecision(4);
  bool described = false;
  for (std::size_t a = 0; a < idx.size() && !described; ++a) {
    for (std::size_t b = a + 1; b < idx.size() && !described; ++b) {
      for (std::size_t c = b + 1; c < idx.size() && !described; ++c) {
        const auto& A = cfg.anchors[idx[a]];
        const auto& B = cfg.anchors[idx[b]];
        const auto& C = cfg.anchors[idx[c]];
        if (std::abs(cross(A.point, B.point, C.point)) < 1e-12) continue;
        auto w = barycentric(p, A.point, B.point, C.point);
        desc << "mixed: " << w[0] << " " << A.name << " + " << w[1] << " " << B.name << " + "
             << w[2] << " " << C.name;
        described = true;
      }
    }
  }
  if (!described) desc << "mixed";
  if (!out.regions.empty()) {
    out.region_descriptor = join(out.regions, "; ") + " (" + desc.str() + ")";
  } else {
    out.region_descriptor = desc.str();
  }
  return out;
}

}  // namespace memfract
