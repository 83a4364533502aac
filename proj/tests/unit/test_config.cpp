#include <cmath>

#include "doctest.h"
#include "ringmem/config.hpp"

using namespace ringmem;
using nlohmann::json;

namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("config accepted: " << text);
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("empty config resolves to the default profile") {
  for (const char* text : {"", "{}", "  \n"}) {
    const auto r = parse_config_text(text);
    CHECK(r.profile == "default");
    CHECK(r.base.kind == ScenarioKind::Single);
    CHECK(r.base.coupling_ratio == 4.0);
    CHECK(r.base.physical.winding_number == 20);
    CHECK(r.base.physical.oam_index == 130);
    CHECK(r.base.physical.atom_count == 20000);
    CHECK(r.base.storage_time == doctest::Approx(613e-6));
    CHECK(point_count(r) == 1);
  }
}

TEST_CASE("unknown keys are rejected at every level") {
  CHECK(kind_of(R"({"bogus": 1})") == ErrorKind::Config);
  CHECK(kind_of(R"({"scenario": {"storage": 1}})") == ErrorKind::Config);
  CHECK(kind_of(R"({"physical": {"atom_count": 10, "colour": "red"}})") == ErrorKind::Config);
  CHECK(kind_of(R"({"sweep": {"temperature": [1, 2]}})") == ErrorKind::Config);
  CHECK(kind_of(R"({"outputs": {"pdf": true}})") == ErrorKind::Config);
}

TEST_CASE("invalid values are config errors") {
  CHECK(kind_of(R"({"physical": {"control_power_w": -1e-9}})") == ErrorKind::Config);
  CHECK(kind_of(R"({"scenario": {"storage_time": -1}})") == ErrorKind::Config);
  CHECK(kind_of(R"({"scenario": {"kind": "triple"}})") == ErrorKind::Config);
  CHECK(kind_of(R"({"scenario": {"cutoff": "two"}})") == ErrorKind::Config);
  CHECK(kind_of(R"({"sweep": {"coupling_ratio": [2, -4]}})") == ErrorKind::Config);
  CHECK(kind_of("{not json") == ErrorKind::Config);
  CHECK(kind_of(R"({"profile": "nonexistent"})") == ErrorKind::Config);
}

TEST_CASE("log grid spacing") {
  const auto g = log_grid(6e-7, 1.9, 25);
  CHECK(g.front() == 6e-7);
  CHECK(g.back() == 1.9);
  for (std::size_t k = 1; k + 1 < g.size(); ++k)
    CHECK(g[k] / g[k - 1] == doctest::Approx(std::pow(10.0, 1.0 / 25)).epsilon(1e-12));
  const double decades = std::log10(1.9 / 6e-7);
  CHECK(g.size() == static_cast<std::size_t>(std::ceil(decades * 25)) + 1);
}

TEST_CASE("coupling-ratio by storage-time sweep expands to a 3 x K matrix") {
  const auto r = parse_config_text(R"({
    "scenario": {"kind": "superposition"},
    "sweep": {"coupling_ratio": [2, 4, 8],
              "storage_time": {"start": 6e-7, "stop": 1.9, "per_decade": 25}}})");
  const std::size_t k = log_grid(6e-7, 1.9, 25).size();
  CHECK(point_count(r) == 3 * k);
  const auto pts = expand(r);
  REQUIRE(pts.size() == 3 * k);
  CHECK(pts[0].config.coupling_ratio == 2.0);
  CHECK(pts[k].config.coupling_ratio == 4.0);
  CHECK(pts[k - 1].config.storage_time == 1.9);
  CHECK(pts[k + 1].coordinates["storage_time"] == pts[1].coordinates["storage_time"]);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(pts[i].index == i);
}

TEST_CASE("sweep cases overlay scenario and physical keys") {
  const auto r = parse_config_text(R"({"profile": "superposition_storage",
    "sweep": {"storage_time": [0.5]}})");
  const auto pts = expand(r);
  REQUIRE(pts.size() == 3);
  CHECK(pts[2].case_label == "ratio_8");
  CHECK(pts[2].config.coupling_ratio == 8.0);
  CHECK(pts[2].config.physical.winding_number == 25);
  CHECK(pts[2].config.physical.atom_count == 80000);
  CHECK(pts[0].config.physical.atom_count == 20000);
}

TEST_CASE("digest tracks resolved values, not spelling") {
  const auto a = parse_config_text(R"({"scenario": {"storage_time": 0.001, "coupling_ratio": 4}})");
  const auto b = parse_config_text(R"({"scenario": {"coupling_ratio": 4.0, "storage_time": 1e-3}})");
  const auto c = parse_config_text(R"({"scenario": {"storage_time": 0.0010001}})");
  const auto d = parse_config_text(R"({"physical": {"atom_count": 20001}})");
  CHECK(a.digest.size() == 64);
  CHECK(a.digest == b.digest);
  CHECK(a.digest != c.digest);
  CHECK(a.digest != d.digest);
  CHECK(parse_config_text("{}").digest == parse_config_text("").digest);
}

TEST_CASE("sha256 of known inputs") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("every shipped profile parses") {
  const auto names = profile_names();
  CHECK(names.size() == 8);
  for (const auto& n : names) {
    CAPTURE(n);
    const auto r = parse_config_text("", n);
    CHECK(r.profile == n);
    CHECK(point_count(r) >= 1);
    CHECK_FALSE(r.description.empty());
  }
  CHECK_THROWS_AS(profile_text("nope"), Error);
}

TEST_CASE("sweep profiles declare the expected grids") {
  const auto f2 = parse_config_text("", "superposition_storage");
  CHECK(point_count(f2) == 3 * log_grid(6e-7, 1.9, 25).size());
  CHECK(f2.base.kind == ScenarioKind::Superposition);
  const auto f3 = parse_config_text("", "entangled_storage");
  CHECK(f3.base.kind == ScenarioKind::Entangled);
  const auto a2 = parse_config_text("", "fock_states");
  CHECK(a2.base.cutoff == 4);
  CHECK(a2.outputs.wigner);
  const auto a3a = parse_config_text("", "winding_scan");
  CHECK(point_count(a3a) == 2 * 21);
  CHECK(a3a.base.coupling_source == CouplingSource::Power);
}

TEST_CASE("profile override beats the document") {
  const auto r = parse_config_text(R"({"profile": "switch_off_scan"})", "default");
  CHECK(r.profile == "default");
}

TEST_CASE("resolved config round-trips through the parser") {
  for (const auto& n : profile_names()) {
    CAPTURE(n);
    const auto r = parse_config_text("", n);
    const auto again = parse_config(r.resolved);
    CHECK(again.digest == r.digest);
    CHECK(point_count(again) == point_count(r));
  }
}

TEST_CASE("detail selector") {
  const auto r = parse_config_text(R"({"outputs": {"detail": {"storage_time": 0.000613}}})");
  CHECK(r.outputs.detail.mode == DetailSelector::Mode::Match);
  CHECK(kind_of(R"({"outputs": {"detail": {"speed": 1}}})") == ErrorKind::Config);
  CHECK(parse_config_text(R"({"outputs": {"detail": "none"}})").outputs.detail.mode ==
        DetailSelector::Mode::None);
}
