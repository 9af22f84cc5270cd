#pragma once

#include <filesystem>
#include <vector>

#include "tact/scenario.hpp"

namespace tact {

// The shipped scenario set, built in code so the files under scenarios/
// can be regenerated and checked for drift.
std::vector<Scenario> gallery();

// Writes <name>.json for every gallery scenario; returns the paths.
std::vector<std::filesystem::path> export_gallery(const std::filesystem::path& dir);

std::vector<Scenario> load_scenarios(const std::filesystem::path& dir);

} // namespace tact
