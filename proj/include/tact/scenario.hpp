#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "tact/action.hpp"

namespace tact {

using json = nlohmann::ordered_json;

inline constexpr int kScenarioVersion = 1;

struct IsotopySpec {
  std::string family;  // twist | shear | rigid | hshear | identity
  json params = json::object();
  json ops = json::array();  // applied in order: power, inverse, compose, conjugate
};

struct MeasureSpec {
  std::string kind;  // lebesgue | disk-lebesgue | atomic
  json data = json::object();
};

struct LiftSpec {
  std::string label;
  TorusPoint point;
  DeckElement deck;
};

struct ToleranceSpec {
  double geom = 1e-9;
  double quad = 1e-3;  // target accuracy of integrated values
  double conv = 1e-3;  // window spread for orbit averages
};

struct Scenario {
  int version = kScenarioVersion;
  std::string name;
  double L = 4.0;
  std::uint64_t seed = 0;
  IsotopySpec isotopy;
  MeasureSpec measure;
  std::vector<LiftSpec> lifts;
  ToleranceSpec tolerances;
  int grid = 128;
  json expect = json::object();      // verify targets
  json acceptance = json::object();  // criteria ids and their tolerances
};

// Field paths in SchemaError messages use dots and brackets, e.g.
// "lifts[2].point".
Scenario parse_scenario(const json& j);
Scenario load_scenario(const std::filesystem::path& file);
json to_json(const Scenario& s);

Isotopy build_isotopy(const Torus& T, const IsotopySpec& spec, const std::string& path = "isotopy");
Isotopy build_isotopy(const Scenario& s);
Measure build_measure(const Scenario& s, const Isotopy& I);
// Each lift must be a contractible fixed point within the geometric
// tolerance; the deck element selects the representative.
std::vector<LabeledLift> resolve_lifts(const Scenario& s, const Isotopy& I);
ActionConfig action_config(const Scenario& s);

} // namespace tact
