#include "tact/scenario.hpp"

#include <fstream>
#include <sstream>

#include "tact/error.hpp"

namespace tact {

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& msg) {
  fail(ErrorKind::SchemaError, path + ": " + msg);
}

const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) schema(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::string join(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }

double number(const json& j, const std::string& path) {
  if (!j.is_number()) schema(path, "expected a number");
  return j.get<double>();
}

long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  return j.get<long>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

std::array<double, 2> pair_of(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) schema(path, "expected a two-element array");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

double num_or(const json& j, const std::string& path, const char* key, double dflt) {
  auto it = j.find(key);
  return it == j.end() ? dflt : number(*it, join(path, key));
}

IsotopySpec parse_isotopy(const json& j, const std::string& path) {
  IsotopySpec s;
  s.family = text(field(j, path, "family"), join(path, "family"));
  if (auto it = j.find("params"); it != j.end()) {
    if (!it->is_object()) schema(join(path, "params"), "expected an object");
    s.params = *it;
  }
  if (auto it = j.find("ops"); it != j.end()) {
    if (!it->is_array()) schema(join(path, "ops"), "expected an array");
    s.ops = *it;
  }
  return s;
}

json isotopy_json(const IsotopySpec& s) {
  return json{{"family", s.family}, {"params", s.params}, {"ops", s.ops}};
}

Isotopy base_family(const Torus& T, const IsotopySpec& spec, const std::string& path) {
  const std::string pp = join(path, "params");
  const json& p = spec.params;
  if (spec.family == "twist") {
    const auto c = pair_of(field(p, pp, "center"), join(pp, "center"));
    RadialProfile prof;
    prof.radius = num_or(p, pp, "radius", 1.0);
    const std::string shape = p.contains("profile") ? text(p["profile"], join(pp, "profile")) : "linear";
    if (shape == "linear") prof.shape = RadialProfile::Shape::Linear;
    else if (shape == "plateau") prof.shape = RadialProfile::Shape::Plateau;
    else schema(join(pp, "profile"), "unknown profile '" + shape + "'");
    return make_twist(T, T.reduce(c[0], c[1]), prof);
  }
  if (spec.family == "shear") return make_shear(T);
  if (spec.family == "rigid") {
    const auto v = pair_of(field(p, pp, "v"), join(pp, "v"));
    return make_rigid_rotation(T, {v[0], v[1]});
  }
  if (spec.family == "hshear") return make_horizontal_shear(T, number(field(p, pp, "amplitude"), join(pp, "amplitude")));
  if (spec.family == "identity") return make_rigid_rotation(T, {0.0, 0.0});
  schema(join(path, "family"), "unknown family '" + spec.family + "'");
}

Isotopy apply_ops(const Torus& T, Isotopy I, const IsotopySpec& spec, const std::string& path) {
  for (std::size_t k = 0; k < spec.ops.size(); ++k) {
    const std::string op_path = join(path, "ops") + "[" + std::to_string(k) + "]";
    const json& op = spec.ops[k];
    const std::string name = text(field(op, op_path, "op"), join(op_path, "op"));
    if (name == "power") {
      const long q = integer(field(op, op_path, "q"), join(op_path, "q"));
      if (q < 1) schema(join(op_path, "q"), "must be at least 1");
      I = power(I, static_cast<int>(q));
    } else if (name == "inverse") {
      I = inverse(I);
    } else if (name == "compose") {
      const std::string wp = join(op_path, "with");
      I = compose(I, build_isotopy(T, parse_isotopy(field(op, op_path, "with"), wp), wp));
    } else if (name == "conjugate") {
      const std::string bp = join(op_path, "by");
      I = conjugate(I, build_isotopy(T, parse_isotopy(field(op, op_path, "by"), bp), bp));
    } else {
      schema(join(op_path, "op"), "unknown operation '" + name + "'");
    }
  }
  return I;
}

// Byte offset to "line L, column C" for parse diagnostics.
std::string locate(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

} // namespace

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) schema("<root>", "expected an object");
  Scenario s;
  s.version = static_cast<int>(integer(field(j, "", "version"), "version"));
  if (s.version != kScenarioVersion) schema("version", "unsupported version " + std::to_string(s.version));
  s.name = text(field(j, "", "name"), "name");
  s.L = number(field(j, "", "L"), "L");
  if (!(s.L > 0.0)) schema("L", "must be positive");
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned() && !it->is_number_integer()) schema("seed", "expected a non-negative integer");
    s.seed = it->get<std::uint64_t>();
  }
  s.isotopy = parse_isotopy(field(j, "", "isotopy"), "isotopy");

  const json& m = field(j, "", "measure");
  s.measure.kind = text(field(m, "measure", "kind"), "measure.kind");
  if (auto it = m.find("data"); it != m.end()) s.measure.data = *it;

  if (auto it = j.find("lifts"); it != j.end()) {
    if (!it->is_array()) schema("lifts", "expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string lp = "lifts[" + std::to_string(k) + "]";
      const json& l = (*it)[k];
      LiftSpec ls;
      ls.label = text(field(l, lp, "label"), lp + ".label");
      const auto pt = pair_of(field(l, lp, "point"), lp + ".point");
      ls.point = {pt[0], pt[1]};
      if (auto d = l.find("deck"); d != l.end()) {
        if (!d->is_array() || d->size() != 2) schema(lp + ".deck", "expected a two-element array");
        ls.deck = {integer((*d)[0], lp + ".deck[0]"), integer((*d)[1], lp + ".deck[1]")};
      }
      s.lifts.push_back(ls);
    }
  }
  if (auto it = j.find("tolerances"); it != j.end()) {
    if (!it->is_object()) schema("tolerances", "expected an object");
    s.tolerances.geom = num_or(*it, "tolerances", "geom", s.tolerances.geom);
    s.tolerances.quad = num_or(*it, "tolerances", "quad", s.tolerances.quad);
    s.tolerances.conv = num_or(*it, "tolerances", "conv", s.tolerances.conv);
    if (!(s.tolerances.geom > 0.0)) schema("tolerances.geom", "must be positive");
    if (!(s.tolerances.conv > 0.0)) schema("tolerances.conv", "must be positive");
  }
  if (auto it = j.find("grid"); it != j.end()) {
    s.grid = static_cast<int>(integer(*it, "grid"));
    if (s.grid < 2) schema("grid", "must be at least 2");
  }
  if (auto it = j.find("expect"); it != j.end()) {
    if (!it->is_object()) schema("expect", "expected an object");
    s.expect = *it;
  }
  if (auto it = j.find("acceptance"); it != j.end()) {
    if (!it->is_object()) schema("acceptance", "expected an object");
    s.acceptance = *it;
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail(ErrorKind::SchemaError, file.string() + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();
  json j;
  try {
    j = json::parse(content);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::SchemaError, file.string() + ": " + locate(content, e.byte == 0 ? 0 : e.byte - 1) +
                                     ": malformed document");
  }
  try {
    return parse_scenario(j);
  } catch (const Error& e) {
    fail(e.kind(), file.string() + ": " + e.detail());
  }
}

json to_json(const Scenario& s) {
  json lifts = json::array();
  for (const auto& l : s.lifts)
    lifts.push_back({{"label", l.label}, {"point", {l.point.x, l.point.y}}, {"deck", {l.deck.m, l.deck.n}}});
  json j{{"version", s.version},
         {"name", s.name},
         {"L", s.L},
         {"seed", s.seed},
         {"isotopy", isotopy_json(s.isotopy)},
         {"measure", {{"kind", s.measure.kind}, {"data", s.measure.data}}},
         {"lifts", lifts},
         {"tolerances", {{"geom", s.tolerances.geom}, {"quad", s.tolerances.quad}, {"conv", s.tolerances.conv}}},
         {"grid", s.grid}};
  if (!s.expect.empty()) j["expect"] = s.expect;
  if (!s.acceptance.empty()) j["acceptance"] = s.acceptance;
  return j;
}

Isotopy build_isotopy(const Torus& T, const IsotopySpec& spec, const std::string& path) {
  try {
    return apply_ops(T, base_family(T, spec, path), spec, path);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SchemaError) throw;
    fail(e.kind(), path + ": " + e.detail());
  }
}

Isotopy build_isotopy(const Scenario& s) { return build_isotopy(Torus(s.L), s.isotopy, "isotopy"); }

Measure build_measure(const Scenario& s, const Isotopy& I) {
  const Torus& T = I.torus();
  const json& d = s.measure.data;
  if (s.measure.kind == "lebesgue") return Measure::lebesgue(T);
  if (s.measure.kind == "disk-lebesgue") {
    const auto c = pair_of(field(d, "measure.data", "center"), "measure.data.center");
    return Measure::disk_lebesgue(T, T.reduce(c[0], c[1]), number(field(d, "measure.data", "radius"), "measure.data.radius"));
  }
  if (s.measure.kind == "atomic") {
    std::vector<Atom> atoms;
    if (auto it = d.find("atoms"); it != d.end()) {
      if (!it->is_array()) schema("measure.data.atoms", "expected an array");
      for (std::size_t k = 0; k < it->size(); ++k) {
        const std::string ap = "measure.data.atoms[" + std::to_string(k) + "]";
        const auto pt = pair_of(field((*it)[k], ap, "point"), ap + ".point");
        atoms.push_back({T.reduce(pt[0], pt[1]), number(field((*it)[k], ap, "weight"), ap + ".weight")});
      }
    }
    if (auto it = d.find("orbits"); it != d.end()) {
      if (!it->is_array()) schema("measure.data.orbits", "expected an array");
      for (std::size_t k = 0; k < it->size(); ++k) {
        const std::string op = "measure.data.orbits[" + std::to_string(k) + "]";
        const auto pt = pair_of(field((*it)[k], op, "point"), op + ".point");
        const double mass = number(field((*it)[k], op, "mass"), op + ".mass");
        const auto orbit = periodic_orbit_atoms(I, T.reduce(pt[0], pt[1]), mass);
        atoms.insert(atoms.end(), orbit.begin(), orbit.end());
      }
    }
    if (atoms.empty()) schema("measure.data", "atomic measure needs atoms or orbits");
    return Measure::atomic(T, std::move(atoms));
  }
  schema("measure.kind", "unknown kind '" + s.measure.kind + "'");
}

std::vector<LabeledLift> resolve_lifts(const Scenario& s, const Isotopy& I) {
  const Torus& T = I.torus();
  std::vector<LabeledLift> out;
  for (std::size_t k = 0; k < s.lifts.size(); ++k) {
    const auto& l = s.lifts[k];
    const PlanePoint p = T.base_lift(T.reduce(l.point.x, l.point.y)) + T.offset(l.deck);
    try {
      require_fixed(I, p, s.tolerances.geom);
    } catch (const Error& e) {
      fail(e.kind(), "lifts[" + std::to_string(k) + "] '" + l.label + "': " + e.detail());
    }
    out.push_back({l.label, p});
  }
  return out;
}

ActionConfig action_config(const Scenario& s) {
  ActionConfig c;
  c.quad.grid_n = s.grid;
  c.conv.delta = s.tolerances.conv;
  c.link.tol.geom = s.tolerances.geom;
  c.link.seed = s.seed;
  c.fixed.tol.geom = s.tolerances.geom;
  c.fixed_tol = s.tolerances.geom;
  return c;
}

} // namespace tact
