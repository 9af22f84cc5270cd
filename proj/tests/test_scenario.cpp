#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>

#include "tact/acceptance.hpp"
#include "tact/error.hpp"
#include "tact/gallery.hpp"
#include "tact/report.hpp"
#include "tact/scenario.hpp"

using namespace tact;
namespace fs = std::filesystem;

namespace {

json base() {
  return json::parse(R"({
    "version": 1, "name": "t", "L": 4.0, "seed": 3,
    "isotopy": {"family": "twist", "params": {"center": [2, 2], "radius": 1.0}},
    "measure": {"kind": "lebesgue"},
    "lifts": [{"label": "c", "point": [2, 2]}, {"label": "e", "point": [3.5, 2], "deck": [1, 0]}]
  })");
}

// Message of the SchemaError raised by parsing j.
std::string schema_error(const json& j) {
  try {
    const Scenario s = parse_scenario(j);
    const Isotopy I = build_isotopy(s);
    build_measure(s, I);
    resolve_lifts(s, I);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SchemaError) return e.what();
    return std::string("other: ") + e.what();
  }
  return "";
}

} // namespace

TEST_CASE("a valid scenario resolves its lifts") {
  const Scenario s = parse_scenario(base());
  CHECK(s.name == "t");
  CHECK(s.seed == 3);
  const Isotopy I = build_isotopy(s);
  const auto lifts = resolve_lifts(s, I);
  REQUIRE(lifts.size() == 2);
  CHECK(lifts[1].lift == PlanePoint{7.5, 2.0});
  CHECK(build_measure(s, I).total_mass() == 16.0);
  CHECK(parse_scenario(to_json(s)).lifts[1].deck == DeckElement{1, 0});
  CHECK(to_json(parse_scenario(to_json(s))) == to_json(s));
}

TEST_CASE("schema errors carry the field path") {
  json j = base();
  j["lifts"][0]["point"] = "middle";
  CHECK(schema_error(j).find("lifts[0].point") != std::string::npos);

  j = base();
  j.erase("measure");
  CHECK(schema_error(j).find("measure: missing") != std::string::npos);

  j = base();
  j["isotopy"]["params"]["profile"] = "cubic";
  CHECK(schema_error(j).find("isotopy.params.profile") != std::string::npos);

  j = base();
  j["isotopy"]["ops"] = json::array({{{"op", "power"}, {"q", 0}}});
  CHECK(schema_error(j).find("isotopy.ops[0].q") != std::string::npos);

  j = base();
  j["isotopy"]["ops"] = json::array({{{"op", "compose"}, {"with", {{"family", "rigid"}, {"params", {{"v", {1}}}}}}}});
  CHECK(schema_error(j).find("isotopy.ops[0].with.params.v") != std::string::npos);

  j = base();
  j["version"] = 2;
  CHECK(schema_error(j).find("version") != std::string::npos);

  j = base();
  j["lifts"][1]["deck"] = {0.5, 0};
  CHECK(schema_error(j).find("lifts[1].deck[0]") != std::string::npos);
}

TEST_CASE("lifts must be fixed points") {
  json j = base();
  j["lifts"][1]["point"] = {2.5, 2.0};
  const std::string msg = schema_error(j);
  CHECK(msg.find("other: ") == 0);
  CHECK(msg.find("lifts[1] 'e'") != std::string::npos);
}

TEST_CASE("parse errors report line and column") {
  const fs::path dir = fs::temp_directory_path() / "tact_scenario_test";
  fs::create_directories(dir);
  const fs::path f = dir / "bad.json";
  std::ofstream(f) << "{\n  \"version\": 1,\n  \"name\": oops\n}\n";
  try {
    load_scenario(f);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SchemaError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  fs::remove_all(dir);
}

TEST_CASE("the shipped scenario files match the built-in gallery") {
  const auto shipped = load_scenarios(TACT_SCENARIO_DIR);
  auto built = gallery();
  // Files load in name order.
  std::sort(built.begin(), built.end(), [](const Scenario& a, const Scenario& b) { return a.name < b.name; });
  REQUIRE(shipped.size() == built.size());
  for (std::size_t k = 0; k < built.size(); ++k) {
    CAPTURE(built[k].name);
    CHECK(to_json(shipped[k]) == to_json(built[k]));
  }
}

TEST_CASE("every gallery scenario builds") {
  for (const Scenario& s : gallery()) {
    CAPTURE(s.name);
    const Isotopy I = build_isotopy(s);
    CHECK_NOTHROW(build_measure(s, I));
    CHECK_NOTHROW(resolve_lifts(s, I));
  }
}

TEST_CASE("acceptance tolerance overrides") {
  AcceptanceTolerances t;
  apply_overrides(t, {{"gap_tol", 0.5}, {"gap_grid", 64}}, "x");
  CHECK(t.gap_tol == 0.5);
  CHECK(t.gap_grid == 64);
  CHECK_THROWS_AS(apply_overrides(t, {{"gap_tolerance", 0.5}}, "x"), Error);
  CHECK_THROWS_AS(apply_overrides(t, {{"gap_tol", "big"}}, "x"), Error);
  CHECK(criterion_title(9) == "Kac identity");
}

TEST_CASE("a corrupted tolerance fails only its criterion") {
  std::vector<Scenario> scen;
  for (const Scenario& s : gallery())
    if (s.name == "rigid_compose" || s.name.rfind("kac", 0) == 0) scen.push_back(s);
  AcceptanceTolerances t = tolerances_from(scen);
  t.morphism_tol = -1.0;
  AcceptanceRunner runner(scen, t);
  CHECK_FALSE(runner.run(11).pass);
  CHECK(runner.run(9).pass);
  const CriterionResult missing = runner.run(1);
  CHECK_FALSE(missing.pass);
  CHECK(missing.detail.find("no scenario declares criterion 1") != std::string::npos);
}

TEST_CASE("reports") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(2.0) == "2");
  ActionReport a;
  a.lifts = {{"c", {2, 2}}, {"e", {3.5, 2}}};
  a.imu = {0.0, 0.5, -0.5, 0.0};
  a.imu_error = {0.0, 0.01, 0.01, 0.0};
  a.l = {0.0, -0.5};
  const std::string csv = spectrum_csv(a);
  CHECK(csv.rfind("label,l_mu,error\n", 0) == 0);
  CHECK(csv.find("e,-0.5,") != std::string::npos);
  const json j = to_json(a);
  CHECK(j.contains("width"));
}
