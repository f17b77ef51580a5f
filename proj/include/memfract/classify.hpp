#pragma once

#include <array>
#include <string>
#include <vector>

#include "memfract/memfractance.hpp"

namespace memfract {

/// Named points of the (alpha1, alpha2) plane and convex regions spanned by
/// them (2 names: segment, 3 names: triangle).
struct AnchorConfig {
  struct Anchor {
    std::string name;
    std::array<double, 2> point;
  };
  struct Region {
    std::vector<std::string> vertices;
  };

  std::vector<Anchor> anchors;
  std::vector<Region> regions;
  double anchor_tol = 1e-6;
  double region_tol = 0.02;

  /// memristor (1,1), memcapacitor (1,0), meminductor (0,1),
  /// second_order_memristor (2,2), capacitor (2,1).
  static AnchorConfig defaults();
  /// {"anchors": {"name": [a1, a2], ...}, "regions": [["a","b","c"], ...],
  ///  "anchor_tol": 1e-6, "region_tol": 0.02}
  static AnchorConfig from_json_text(const std::string& text);
  std::string to_json_text() const;
  void validate() const;
  const Anchor& anchor(const std::string& name) const;
};

struct DeviceClass {
  std::array<double, 2> point{};
  std::string label;  // an anchor name or "mixed"
  std::vector<std::string> regions;  // e.g. "triangle memristor-memcapacitor-capacitor"
  std::string region_descriptor;
};

DeviceClass classify_device(const FracOrderPair& alphas, const AnchorConfig& anchors);

}  // namespace memfract
