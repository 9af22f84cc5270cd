#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tact/scenario.hpp"

namespace tact {

// Pinned thresholds of the acceptance matrix. Scenario files may override
// any of them by name under acceptance.tolerances.
struct AcceptanceTolerances {
  double gap_tol = 1e-3;
  int gap_grid = 512;
  double gap_runtime_s = 60.0;
  double classical_tol = 1e-6;
  double rational_runtime_s = 1.0;
  int configurations = 50;
  double identities_runtime_s = 120.0;
  double iteration_rel = 1e-3;
  int iteration_grid = 64;
  double slope_rel = 1e-2;
  int width_grid = 48;
  double component_tol = 1e-3;
  double component_gap_tol = 1e-2;
  double displacement_tol = 1e-9;
  double invariance_tol = 1e-9;
  double kac_tol = 1e-12;
  double cocycle_factor = 10.0;
  double morphism_tol = 1e-9;
  int oracle_instances = 100;
};

// Throws SchemaError on unknown keys or non-numeric values.
void apply_overrides(AcceptanceTolerances& t, const json& overrides, const std::string& path);
AcceptanceTolerances tolerances_from(const std::vector<Scenario>& scenarios);

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriteria = 12;

std::string criterion_title(int id);

// Runs criteria 1..12 against the scenarios that declare them. Computations
// shared between criteria are done once.
class AcceptanceRunner {
public:
  AcceptanceRunner(std::vector<Scenario> scenarios, AcceptanceTolerances tol);

  CriterionResult run(int id);
  std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& on_result = {});

private:
  std::vector<const Scenario*> declaring(int id) const;
  const Scenario& require(int id, const std::string& name = {}) const;

  CriterionResult twist_gap();
  CriterionResult classical();
  CriterionResult rational();
  CriterionResult identities();
  CriterionResult iteration();
  CriterionResult width_growth();
  CriterionResult components();
  CriterionResult shear_example();
  CriterionResult kac();
  CriterionResult coboundary();
  CriterionResult morphism();
  CriterionResult oracle();

  PairValue gap_value();

  std::vector<Scenario> scenarios_;
  AcceptanceTolerances tol_;
  std::optional<PairValue> gap_;
  double gap_seconds_ = 0.0;
};

std::string format_result(const CriterionResult& r);

struct VerifyResult {
  bool pass = true;
  json report;
};

// Checks every target under the scenario's expect block.
VerifyResult verify_scenario(const Scenario& s);

} // namespace tact
