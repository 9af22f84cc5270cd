// Scenario-driven front end. Exit codes: 0 success, 1 error, 2 failed
// verification.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <utility>
#include <string>
#include <vector>

#include "tact/acceptance.hpp"
#include "tact/error.hpp"
#include "tact/gallery.hpp"
#include "tact/report.hpp"
#include "tact/scenario.hpp"

#ifdef TACT_HAVE_OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;
using namespace tact;

namespace {

struct Flags {
  std::optional<int> grid;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  fs::path out = "out";
  int threads = 0;
};

Scenario load_with_flags(const fs::path& file, const Flags& f) {
  Scenario s = load_scenario(file);
  if (f.grid) s.grid = *f.grid;
  if (f.seed) s.seed = *f.seed;
  if (f.tol) s.tolerances.quad = *f.tol;
  return s;
}

ActionConfig config_with_flags(const Scenario& s, const Flags& f) {
  ActionConfig cfg = action_config(s);
  cfg.quad.threads = f.threads;
  return cfg;
}

json envelope(const Scenario& s, const std::string& command) {
  return {{"command", command}, {"scenario", to_json(s)}};
}

fs::path report_path(const Flags& f, const Scenario& s, const std::string& command, const char* ext) {
  return f.out / (s.name + "." + command + ext);
}

int run_linking(const Scenario& s, const Flags& f) {
  const Isotopy I = build_isotopy(s);
  const auto lifts = resolve_lifts(s, I);
  std::vector<PlanePoint> pts;
  for (const auto& l : lifts) pts.push_back(l.lift);
  const WbReport wb = wb_diagnostic(I, pts, config_with_flags(s, f).link.tol);
  json rep = envelope(s, "linking");
  rep["linking"] = to_json(wb, lifts);
  write_json(report_path(f, s, "linking", ".json"), rep);
  std::string csv = "a,b,linking\n";
  for (std::size_t i = 0; i < lifts.size(); ++i)
    for (std::size_t j = 0; j < lifts.size(); ++j)
      if (i != j) csv += lifts[i].label + "," + lifts[j].label + "," + std::to_string(wb.matrix.at(i, j)) + "\n";
  write_text(report_path(f, s, "linking", ".csv"), csv);
  std::printf("%s: max |i(a,b)| = %ld, bound %ld\n", s.name.c_str(), wb.matrix.max_abs, wb.global_bound);
  return 0;
}

int run_rotation(const Scenario& s, const Flags& f) {
  const Isotopy I = build_isotopy(s);
  const Measure mu = build_measure(s, I);
  const ActionConfig cfg = config_with_flags(s, f);
  const RotationMeasure rho = rotation_vector_measure(I, mu, cfg);
  const FixedPointSet fix = find_fixed_points(I, 64, s.tolerances.geom);
  json rep = envelope(s, "rotation");
  rep["rotation"] = to_json(rho);
  rep["fixed_points"] = to_json(fix);
  write_json(report_path(f, s, "rotation", ".json"), rep);
  write_text(report_path(f, s, "rotation", ".csv"),
             "component,mean,error\nx," + format_number(rho.mean.x) + "," + format_number(rho.error.x) + "\ny," +
                 format_number(rho.mean.y) + "," + format_number(rho.error.y) + "\n");
  std::printf("%s: rho = (%.12g, %.12g) +- (%.3g, %.3g), %zu contractible fixed points\n", s.name.c_str(), rho.mean.x,
              rho.mean.y, rho.error.x, rho.error.y, fix.points.size());
  return 0;
}

int run_action(const Scenario& s, const Flags& f, const std::string& command) {
  const Isotopy I = build_isotopy(s);
  const Measure mu = build_measure(s, I);
  const ActionReport a = solve_action_function(I, mu, resolve_lifts(s, I), config_with_flags(s, f));
  json rep = envelope(s, command);
  rep["action"] = to_json(a);
  write_json(report_path(f, s, command, ".json"), rep);
  write_text(report_path(f, s, command, ".csv"), spectrum_csv(a));
  if (command == "action") write_text(f.out / (s.name + ".pairs.csv"), pairs_csv(a));
  std::printf("%s: width = %.12g, %zu spectrum values, quadrature error %.3g\n", s.name.c_str(), a.width,
              a.spectrum.size(), a.quad_error);
  return 0;
}

int run_verify(const Scenario& s, const Flags& f) {
  const VerifyResult v = verify_scenario(s);
  json rep = envelope(s, "verify");
  rep["verify"] = v.report;
  write_json(report_path(f, s, "verify", ".json"), rep);
  std::string csv = "check,pass\n";
  for (const auto& c : v.report["checks"])
    csv += c["check"].get<std::string>() + "," + (c["pass"].get<bool>() ? "1" : "0") + "\n";
  write_text(report_path(f, s, "verify", ".csv"), csv);
  for (const auto& c : v.report["checks"])
    std::printf("%s %-14s %s\n", s.name.c_str(), c["check"].get<std::string>().c_str(),
                c["pass"].get<bool>() ? "PASS" : "FAIL");
  return v.pass ? 0 : 2;
}

int run_suite(const fs::path& dir, const Flags& f, bool write_report, const std::vector<int>& only) {
  std::vector<Scenario> scenarios = load_scenarios(dir);
  if (scenarios.empty()) fail(ErrorKind::ConfigError, "no scenarios in " + dir.string());
  const AcceptanceTolerances tol = tolerances_from(scenarios);
  AcceptanceRunner runner(std::move(scenarios), tol);
  json results = json::array();
  bool all = true;
  auto record = [&](const CriterionResult& r) {
    std::cout << format_result(r) << std::endl;
    all = all && r.pass;
    results.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
  };
  if (only.empty()) runner.run_all(record);
  else
    for (int id : only) record(runner.run(id));
  std::cout << (all ? "suite: PASS" : "suite: FAIL") << std::endl;
  if (write_report) write_json(f.out / "suite.json", {{"criteria", results}, {"pass", all}});
  return all ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"tact: linking, rotation and action computations on the flat torus"};
  app.require_subcommand(1);
  Flags f;
  auto add_flags = [&](CLI::App* c) {
    c->add_option("--grid", f.grid, "quadrature grid size per side");
    c->add_option("--seed", f.seed, "seed for deterministic jitter");
    c->add_option("--tol", f.tol, "target accuracy of integrated values");
    c->add_option("--out", f.out, "report directory");
    c->add_option("--threads", f.threads, "OpenMP threads (0 = default)");
  };

  fs::path path;
  std::string command;
  const std::pair<const char*, const char*> commands[] = {
      {"linking", "linking numbers of every lift pair"},
      {"rotation", "rotation vector of the measure"},
      {"action", "pairwise action differences and the action function"},
      {"spectrum", "action function values per lift"},
      {"verify", "check the scenario's expected values"}};
  for (const auto& [name, help] : commands) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("scenario", path, "scenario file")->required();
    add_flags(c);
    c->callback([&command, name] { command = name; });
  }
  bool suite_report = false;
  std::vector<int> only;
  CLI::App* suite = app.add_subcommand("suite", "run the acceptance matrix over a scenario directory");
  suite->add_option("dir", path, "scenario directory")->required();
  add_flags(suite);
  suite->add_option("--criteria", only, "comma-separated subset of criteria")
      ->delimiter(',')
      ->check(CLI::Range(1, kCriteria));
  suite->callback([&] {
    command = "suite";
    suite_report = suite->count("--out") > 0;
  });
  CLI::App* exp = app.add_subcommand("export-gallery", "write the shipped scenarios");
  exp->add_option("dir", path, "target directory")->required();
  exp->callback([&] { command = "export-gallery"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

#ifdef TACT_HAVE_OPENMP
  if (f.threads > 0) omp_set_num_threads(f.threads);
#endif

  try {
    if (command == "suite") return run_suite(path, f, suite_report, only);
    if (command == "export-gallery") {
      for (const auto& p : export_gallery(path)) std::printf("%s\n", p.string().c_str());
      return 0;
    }
    const Scenario s = load_with_flags(path, f);
    if (command == "linking") return run_linking(s, f);
    if (command == "rotation") return run_rotation(s, f);
    if (command == "verify") return run_verify(s, f);
    return run_action(s, f, command);
  } catch (const Error& e) {
    std::fprintf(stderr, "%s: %s\n", command.c_str(), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s: %s\n", command.c_str(), e.what());
    return 1;
  }
}
