#pragma once

#include <filesystem>
#include <string>

#include "tact/scenario.hpp"

namespace tact {

json point_json(PlanePoint p);
json point_json(TorusPoint p);

json to_json(const FixedPointSet& f);
json to_json(const RotationMeasure& r);
json to_json(const WbReport& wb, const std::vector<LabeledLift>& lifts);
json to_json(const ActionReport& a);
json to_json(const IterationReport& r);
json to_json(const SchwarzReport& r);
json to_json(const KacReport& r);

// Error bar on each l_μ entry implied by the row-mean reconstruction.
std::vector<double> action_errors(const ActionReport& a);

// label,l_mu,error rows; L_μ when available, l_μ otherwise.
std::string spectrum_csv(const ActionReport& a);
std::string pairs_csv(const ActionReport& a);

// Pretty JSON with a trailing newline; parent directories are created.
void write_json(const std::filesystem::path& file, const json& j);
void write_text(const std::filesystem::path& file, const std::string& text);

// Shortest round-trip decimal for a double.
std::string format_number(double v);

} // namespace tact
