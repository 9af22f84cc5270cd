// The acceptance matrix over the built-in gallery at the pinned
// tolerances. One line per criterion; exit status 1 on any failure.
// An optional argument names a scenario directory to use instead.

#include <cstdio>
#include <iostream>

#include "tact/acceptance.hpp"
#include "tact/error.hpp"
#include "tact/gallery.hpp"

int main(int argc, char** argv) {
  using namespace tact;
  try {
    std::vector<Scenario> scenarios = argc > 1 ? load_scenarios(argv[1]) : gallery();
    const AcceptanceTolerances tol = tolerances_from(scenarios);
    AcceptanceRunner runner(std::move(scenarios), tol);
    int failed = 0;
    runner.run_all([&](const CriterionResult& r) {
      std::cout << format_result(r) << std::endl;
      failed += r.pass ? 0 : 1;
    });
    std::cout << (kCriteria - failed) << "/" << kCriteria << " criteria pass" << std::endl;
    return failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance: %s\n", e.what());
    return 1;
  }
}
