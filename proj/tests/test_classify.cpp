#include <doctest.h>

#include <algorithm>

#include "memfract/classify.hpp"
#include "memfract/io.hpp"
#include "support.hpp"

using namespace memfract;

namespace {

bool has_region(const DeviceClass& c, const std::string& r) {
  return std::find(c.regions.begin(), c.regions.end(), r) != c.regions.end();
}

}  // namespace

TEST_CASE("anchors are recognised") {
  auto cfg = AnchorConfig::defaults();
  CHECK(classify_device(FracOrderPair(1, 1), cfg).label == "memristor");
  CHECK(classify_device(FracOrderPair(1, 0), cfg).label == "memcapacitor");
  CHECK(classify_device(FracOrderPair(2, 1), cfg).label == "capacitor");
  CHECK(classify_device(FracOrderPair(0.5, 0.5), cfg).label == "mixed");
}

TEST_CASE("shipped anchor file places the reference optima") {
  auto cfg = AnchorConfig::from_json_text(read_text_file(test::data_path("fixtures/anchors.json")));
  auto global = classify_device(FracOrderPair(1.08642731, 0.25709492), cfg);
  CHECK(has_region(global, "triangle memristor-memcapacitor-capacitor"));
  auto piecewise = classify_device(FracOrderPair(1.78348389322388, 1.0), cfg);
  CHECK(has_region(piecewise, "segment memristor-capacitor"));
}

TEST_CASE("anchor config validation") {
  CHECK_THROWS(AnchorConfig::from_json_text(R"({"anchors":{"a":[3,0]},"regions":[]})"));
  CHECK_THROWS(AnchorConfig::from_json_text(R"({"anchors":{"a":[1,0]},"regions":[["a","b"]]})"));
  auto cfg = AnchorConfig::defaults();
  CHECK(AnchorConfig::from_json_text(cfg.to_json_text()).anchors.size() == cfg.anchors.size());
}
