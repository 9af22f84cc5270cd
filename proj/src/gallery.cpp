#include "tact/gallery.hpp"

#include <algorithm>
#include <cmath>

#include "tact/error.hpp"
#include "tact/random.hpp"
#include "tact/report.hpp"

namespace tact {

namespace {

constexpr double kL = 4.0;

json twist_spec(const char* profile) {
  return json{{"family", "twist"}, {"params", {{"center", {2.0, 2.0}}, {"radius", 1.0}, {"profile", profile}}},
              {"ops", json::array()}};
}

Scenario base(const std::string& name, const json& isotopy, const std::string& measure) {
  Scenario s;
  s.name = name;
  s.L = kL;
  s.isotopy.family = isotopy["family"];
  s.isotopy.params = isotopy["params"];
  s.isotopy.ops = isotopy["ops"];
  s.measure.kind = measure;
  return s;
}

LiftSpec lift(const std::string& label, double x, double y, long m = 0, long n = 0) { return {label, {x, y}, {m, n}}; }

// Exterior points of the unit twist disk at (2, 2), drawn once from a fixed
// stream and stored explicitly in the scenario.
std::vector<LiftSpec> exterior_sample(int count, std::uint64_t seed) {
  const Torus T(kL);
  const CounterRng rng(seed, 0xe7);
  std::vector<LiftSpec> out;
  std::uint64_t ctr = 0;
  while (static_cast<int>(out.size()) < count) {
    const double x = std::round(rng.uniform(ctr++, 0.0, kL) * 1000.0) / 1000.0;
    const double y = std::round(rng.uniform(ctr++, 0.0, kL) * 1000.0) / 1000.0;
    if (T.distance({x, y}, {2.0, 2.0}) < 1.1) continue;
    out.push_back(lift("ext" + std::to_string(out.size()), x, y));
  }
  return out;
}

json disk(double x, double y, double r) { return {{"center", {x, y}}, {"radius", r}}; }

} // namespace

std::vector<Scenario> gallery() {
  std::vector<Scenario> g;
  const double gap = 2.0 * std::numbers::pi / 3.0;

  {
    Scenario s = base("twist", twist_spec("linear"), "lebesgue");
    s.lifts = {lift("center", 2.0, 2.0), lift("exterior", 3.5, 2.0), lift("corner", 0.25, 0.25)};
    s.grid = 128;
    s.expect = {{"width", gap}, {"width_tol", 1e-2}, {"rho", {0.0, 0.0}}, {"rho_tol", 1e-6}};
    s.acceptance = {{"criteria", {1, 2, 4, 5, 6, 10, 12}},
                    {"tolerances",
                     {{"gap_tol", 1e-3},
                      {"gap_grid", 512},
                      {"gap_runtime_s", 60.0},
                      {"classical_tol", 1e-6},
                      {"iteration_rel", 1e-3},
                      {"iteration_grid", 64},
                      {"slope_rel", 1e-2},
                      {"width_grid", 48}}}};
    g.push_back(s);
  }
  {
    Scenario s = base("plateau", twist_spec("plateau"), "lebesgue");
    s.lifts = {lift("center", 2.0, 2.0), lift("inner", 2.25, 2.0), lift("exterior", 3.5, 2.0)};
    s.grid = 64;
    s.expect = {{"width", 7.0 * std::numbers::pi / 12.0}, {"width_tol", 2e-2}};
    s.acceptance = {{"criteria", {4, 5, 10, 12}},
                    {"tolerances", {{"configurations", 50}, {"identities_runtime_s", 120.0}, {"oracle_instances", 100}}}};
    g.push_back(s);
  }
  {
    Scenario s = base("twist_rational", twist_spec("linear"), "lebesgue");
    s.lifts = {lift("center", 2.0, 2.0), lift("exterior", 3.5, 2.0)};
    s.acceptance = {{"criteria", {3}},
                    {"radii", {{1, 3}, {2, 5}, {3, 7}}},
                    {"angle", 0.7},
                    {"tolerances", {{"rational_runtime_s", 1.0}}}};
    g.push_back(s);
  }
  {
    Scenario s = base("twist_components", twist_spec("linear"), "lebesgue");
    s.lifts = {lift("center", 2.0, 2.0)};
    for (const auto& l : exterior_sample(10, 7)) s.lifts.push_back(l);
    s.grid = 32;
    s.acceptance = {{"criteria", {7, 10}},
                    {"tolerances", {{"component_tol", 1e-3}, {"component_gap_tol", 1e-2}}}};
    g.push_back(s);
  }
  {
    // Two invariant horizontal circles carried in opposite directions.
    Scenario s = base("shear", json{{"family", "shear"}, {"params", json::object()}, {"ops", json::array()}}, "atomic");
    json atoms = json::array();
    for (double y : {0.0, kL / 2.0})
      for (int k = 0; k < 20; ++k) atoms.push_back({{"point", {0.2 * k, y}}, {"weight", 1.0 / 40.0}});
    s.measure.data = {{"atoms", atoms}};
    s.expect = {{"fixed_points", 0}, {"rho", {0.0, 0.0}}, {"rho_tol", 0.0}};
    s.acceptance = {{"criteria", {8}},
                    {"tolerances", {{"displacement_tol", 1e-9}, {"invariance_tol", 1e-9}}}};
    g.push_back(s);
  }
  {
    Scenario s = base("kac_single_orbit", twist_spec("linear"), "atomic");
    s.measure.data = {{"orbits", json::array({{{"point", {2.0 + 1.0 / 3.0, 2.0}}, {"mass", 1.0}}})}};
    s.acceptance = {{"criteria", {9}}, {"disk", disk(2.0 + 1.0 / 3.0, 2.0, 0.05)}, {"tolerances", {{"kac_tol", 1e-12}}}};
    g.push_back(s);
  }
  {
    Scenario s = base("kac_covering_disk", twist_spec("linear"), "atomic");
    s.measure.data = {{"orbits", json::array({{{"point", {2.0 + 1.0 / 3.0, 2.0}}, {"mass", 1.0}}})}};
    s.acceptance = {{"criteria", {9}}, {"disk", disk(2.0, 2.0, 0.5)}, {"tolerances", {{"kac_tol", 1e-12}}}};
    g.push_back(s);
  }
  {
    Scenario s = base("kac_two_orbits", twist_spec("linear"), "atomic");
    s.measure.data = {{"orbits", json::array({{{"point", {2.0 + 1.0 / 3.0, 2.0}}, {"mass", 0.25}},
                                              {{"point", {2.0, 2.0 - 0.4}}, {"mass", 0.75}}})}};
    s.acceptance = {{"criteria", {9}}, {"disk", disk(2.0 + 1.0 / 3.0, 2.0, 0.05)}, {"tolerances", {{"kac_tol", 1e-12}}}};
    g.push_back(s);
  }
  {
    json iso{{"family", "rigid"},
             {"params", {{"v", {1.0, 0.0}}}},
             {"ops", json::array({{{"op", "compose"},
                                   {"with", {{"family", "rigid"}, {"params", {{"v", {0.5, 1.0}}}}, {"ops", json::array()}}}}})}};
    Scenario s = base("rigid_compose", iso, "lebesgue");
    s.grid = 16;
    s.expect = {{"rho", {1.5, 1.0}}, {"rho_tol", 1e-9}};
    s.acceptance = {{"criteria", {11}}, {"parts", {{1.0, 0.0}, {0.5, 1.0}}}, {"tolerances", {{"morphism_tol", 1e-9}}}};
    g.push_back(s);
  }
  {
    json iso = twist_spec("linear");
    iso["ops"] = json::array(
        {{{"op", "conjugate"}, {"by", {{"family", "hshear"}, {"params", {{"amplitude", 0.3}}}, {"ops", json::array()}}}}});
    Scenario s = base("twist_conjugated", iso, "lebesgue");
    // The conjugacy fixes the line y = 2 pointwise.
    s.lifts = {lift("center", 2.0, 2.0), lift("exterior", 3.5, 2.0)};
    s.grid = 64;
    s.expect = {{"width", gap}, {"width_tol", 2e-2}};
    s.acceptance = {{"criteria", {10}}};
    g.push_back(s);
  }
  {
    Scenario s = base("identity", json{{"family", "identity"}, {"params", json::object()}, {"ops", json::array()}},
                      "lebesgue");
    s.lifts = {lift("p", 1.0, 1.0), lift("q", 3.0, 2.5)};
    s.grid = 16;
    s.expect = {{"width", 0.0}, {"width_tol", 1e-12}};
    s.acceptance = {{"criteria", {10}}};
    g.push_back(s);
  }
  return g;
}

std::vector<std::filesystem::path> export_gallery(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& s : gallery()) {
    const auto file = dir / (s.name + ".json");
    write_json(file, to_json(s));
    out.push_back(file);
  }
  return out;
}

std::vector<Scenario> load_scenarios(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) fail(ErrorKind::ConfigError, dir.string() + ": not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<Scenario> out;
  for (const auto& f : files) out.push_back(load_scenario(f));
  return out;
}

} // namespace tact
