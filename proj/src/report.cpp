#include "tact/report.hpp"

#include <charconv>
#include <fstream>

#include "tact/error.hpp"

namespace tact {

json point_json(PlanePoint p) { return json::array({p.x, p.y}); }
json point_json(TorusPoint p) { return json::array({p.x, p.y}); }

json to_json(const FixedPointSet& f) {
  json pts = json::array();
  for (std::size_t i = 0; i < f.points.size(); ++i) {
    const auto& p = f.points[i];
    pts.push_back({{"point", point_json(p.z)},
                   {"contractible", p.contractible},
                   {"residual", p.residual},
                   {"component", f.component.empty() ? -1 : f.component[i]}});
  }
  long contractible = 0;
  for (const auto& p : f.points) contractible += p.contractible ? 1 : 0;
  return {{"grid", f.grid_n},
          {"count", f.points.size()},
          {"contractible", contractible},
          {"components", f.components},
          {"min_displacement", f.min_displacement},
          {"points", pts}};
}

json to_json(const RotationMeasure& r) {
  return {{"mean", point_json(r.mean)},
          {"integral", point_json(r.integral)},
          {"error", point_json(r.error)},
          {"mass", r.mass},
          {"unconverged", r.unconverged}};
}

json to_json(const WbReport& wb, const std::vector<LabeledLift>& lifts) {
  json rows = json::array();
  const std::size_t n = lifts.size();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j) row.push_back(i == j ? 0 : wb.matrix.at(i, j));
    rows.push_back(row);
  }
  json labels = json::array();
  for (const auto& l : lifts) labels.push_back(l.label);
  return {{"labels", labels}, {"matrix", rows}, {"row_bound", wb.row_bound}, {"global_bound", wb.global_bound}};
}

std::vector<double> action_errors(const ActionReport& a) {
  const std::size_t m = a.lifts.size();
  std::vector<double> e(m, 0.0);
  auto col = [&](std::size_t k) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s += a.imu_error[j * m + k];
    return s / static_cast<double>(m);
  };
  const double e0 = col(0);
  for (std::size_t k = 1; k < m; ++k) e[k] = col(k) + e0;
  return e;
}

json to_json(const ActionReport& a) {
  const std::size_t m = a.lifts.size();
  json labels = json::array(), imu = json::array(), err = json::array();
  for (const auto& l : a.lifts) labels.push_back(l.label);
  for (std::size_t i = 0; i < m; ++i) {
    json r = json::array(), re = json::array();
    for (std::size_t j = 0; j < m; ++j) {
      r.push_back(a.at(i, j));
      re.push_back(a.imu_error[i * m + j]);
    }
    imu.push_back(r);
    err.push_back(re);
  }
  json j{{"labels", labels},
         {"i_mu", imu},
         {"i_mu_error", err},
         {"l_mu", a.l},
         {"l_mu_error", action_errors(a)},
         {"rho", point_json(a.rho)},
         {"rho_zero", a.rho_zero},
         {"spectrum", a.spectrum},
         {"width", a.width},
         {"cocycle_residual", a.cocycle_residual},
         {"reconstruction_residual", a.reconstruction_residual},
         {"quad_error", a.quad_error},
         {"unconverged_cells", a.unconverged}};
  j["L_mu"] = a.L ? json(*a.L) : json(nullptr);
  if (!a.deck_check.empty()) j["deck_check"] = a.deck_check;
  return j;
}

json to_json(const IterationReport& r) {
  json e = json::array();
  for (const auto& x : r.entries)
    e.push_back({{"q", x.q},
                 {"value", x.value.value},
                 {"error", x.value.error},
                 {"ratio", x.ratio},
                 {"deviation", x.deviation},
                 {"pass", x.pass}});
  return {{"base", r.base.value}, {"base_error", r.base.error}, {"entries", e}, {"pass", r.pass()}};
}

json to_json(const SchwarzReport& r) {
  return {{"rho", point_json(r.rho)},
          {"rho_zero", r.rho_zero},
          {"fixed_points", r.fixed_points},
          {"contractible", r.contractible},
          {"identity", r.identity},
          {"hypothesis_violated", r.hypothesis_violated},
          {"widths", r.widths},
          {"width_errors", r.width_errors},
          {"slope", r.slope},
          {"nonconstant", r.nonconstant},
          {"verdict", r.verdict}};
}

json to_json(const KacReport& r) {
  return {{"lhs", r.lhs}, {"rhs", r.rhs}, {"atoms_in_disk", r.atoms_in_disk}, {"pass", r.pass}};
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string spectrum_csv(const ActionReport& a) {
  const auto& vals = a.L ? *a.L : a.l;
  const auto err = action_errors(a);
  std::string out = "label,l_mu,error\n";
  for (std::size_t k = 0; k < a.lifts.size(); ++k)
    out += a.lifts[k].label + "," + format_number(vals[k]) + "," + format_number(err[k]) + "\n";
  return out;
}

std::string pairs_csv(const ActionReport& a) {
  const std::size_t m = a.lifts.size();
  std::string out = "a,b,i_mu,error\n";
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      out += a.lifts[i].label + "," + a.lifts[j].label + "," + format_number(a.at(i, j)) + "," +
             format_number(a.imu_error[i * m + j]) + "\n";
  return out;
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::error_code ec;
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path(), ec);
  if (ec) fail(ErrorKind::ConfigError, "cannot create " + file.parent_path().string() + ": " + ec.message());
  std::ofstream out(file, std::ios::binary);
  if (!out) fail(ErrorKind::ConfigError, "cannot write " + file.string());
  out << text;
}

void write_json(const std::filesystem::path& file, const json& j) { write_text(file, j.dump(2) + "\n"); }

} // namespace tact
