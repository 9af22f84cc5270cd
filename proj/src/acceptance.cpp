#include "tact/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "tact/error.hpp"
#include "tact/random.hpp"
#include "tact/report.hpp"

namespace tact {

namespace {

constexpr double kGap = 2.0 * std::numbers::pi / 3.0;

class Stopwatch {
public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string g(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string g12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

PlanePoint lift_of(const std::vector<LabeledLift>& lifts, const std::string& label, const std::string& scenario) {
  for (const auto& l : lifts)
    if (l.label == label) return l.lift;
  fail(ErrorKind::ConfigError, scenario + ": no lift labelled '" + label + "'");
}

RadialProfile twist_profile(const Scenario& s) {
  if (s.isotopy.family != "twist" || !s.isotopy.ops.empty())
    fail(ErrorKind::ConfigError, s.name + ": closed-form Hamiltonian needs a plain twist");
  RadialProfile p;
  p.radius = s.isotopy.params.value("radius", 1.0);
  p.shape = s.isotopy.params.value("profile", std::string("linear")) == "plateau" ? RadialProfile::Shape::Plateau
                                                                                 : RadialProfile::Shape::Linear;
  return p;
}

TorusPoint twist_center(const Scenario& s) {
  const auto c = s.isotopy.params.at("center");
  return {c[0].get<double>(), c[1].get<double>()};
}

ReturnDisk disk_of(const Scenario& s) {
  const json& d = s.acceptance.at("disk");
  return ReturnDisk{{d.at("center")[0].get<double>(), d.at("center")[1].get<double>()}, d.at("radius").get<double>()};
}

struct Field {
  const char* name;
  double AcceptanceTolerances::*real = nullptr;
  int AcceptanceTolerances::*whole = nullptr;
};

const Field kFields[] = {
    {"gap_tol", &AcceptanceTolerances::gap_tol},
    {"gap_grid", nullptr, &AcceptanceTolerances::gap_grid},
    {"gap_runtime_s", &AcceptanceTolerances::gap_runtime_s},
    {"classical_tol", &AcceptanceTolerances::classical_tol},
    {"rational_runtime_s", &AcceptanceTolerances::rational_runtime_s},
    {"configurations", nullptr, &AcceptanceTolerances::configurations},
    {"identities_runtime_s", &AcceptanceTolerances::identities_runtime_s},
    {"iteration_rel", &AcceptanceTolerances::iteration_rel},
    {"iteration_grid", nullptr, &AcceptanceTolerances::iteration_grid},
    {"slope_rel", &AcceptanceTolerances::slope_rel},
    {"width_grid", nullptr, &AcceptanceTolerances::width_grid},
    {"component_tol", &AcceptanceTolerances::component_tol},
    {"component_gap_tol", &AcceptanceTolerances::component_gap_tol},
    {"displacement_tol", &AcceptanceTolerances::displacement_tol},
    {"invariance_tol", &AcceptanceTolerances::invariance_tol},
    {"kac_tol", &AcceptanceTolerances::kac_tol},
    {"cocycle_factor", &AcceptanceTolerances::cocycle_factor},
    {"morphism_tol", &AcceptanceTolerances::morphism_tol},
    {"oracle_instances", nullptr, &AcceptanceTolerances::oracle_instances},
};

// A random fixed lift of the twist family: the center, an exterior point,
// or (plateau profile) a point of the rigidly turning inner disk.
struct LiftPool {
  const Torus& T;
  TorusPoint center;
  RadialProfile prof;

  PlanePoint draw(const CounterRng& rng, std::uint64_t& ctr, int kind) const {
    const DeckElement d{rng.integer(ctr++, -1, 1), rng.integer(ctr++, -1, 1)};
    PlanePoint p{center.x, center.y};
    if (kind == 1) {
      while (true) {
        const TorusPoint z{rng.uniform(ctr++, 0.0, T.modulus()), rng.uniform(ctr++, 0.0, T.modulus())};
        if (T.distance(z, center) > 1.05 * prof.radius) {
          p = T.base_lift(z);
          break;
        }
      }
    } else if (kind == 2) {
      const double r = prof.radius * rng.uniform(ctr++, 0.05, 0.45);
      const double th = 2.0 * std::numbers::pi * rng.uniform(ctr++);
      p = {center.x + r * std::cos(th), center.y + r * std::sin(th)};
    }
    return p + T.offset(d);
  }

  // A point that moves under the twist, away from the fixed lifts.
  TorusPoint moving(const CounterRng& rng, std::uint64_t& ctr) const {
    const double lo = prof.shape == RadialProfile::Shape::Plateau ? 0.55 : 0.1;
    const double r = prof.radius * rng.uniform(ctr++, lo, 0.92);
    const double th = 2.0 * std::numbers::pi * rng.uniform(ctr++);
    return T.reduce(center.x + r * std::cos(th), center.y + r * std::sin(th));
  }
};

ReturnDisk disk_avoiding(const Torus& T, TorusPoint z, const std::vector<PlanePoint>& lifts) {
  double d = INFINITY;
  for (const auto& p : lifts) d = std::min(d, T.distance(z, T.project(p)));
  return ReturnDisk{z, std::min(0.1, 0.45 * d), 100000};
}

} // namespace

void apply_overrides(AcceptanceTolerances& t, const json& overrides, const std::string& path) {
  if (!overrides.is_object()) fail(ErrorKind::SchemaError, path + ": expected an object");
  for (auto it = overrides.begin(); it != overrides.end(); ++it) {
    const Field* f = nullptr;
    for (const auto& k : kFields)
      if (it.key() == k.name) f = &k;
    if (!f) fail(ErrorKind::SchemaError, path + "." + it.key() + ": unknown tolerance");
    if (!it.value().is_number()) fail(ErrorKind::SchemaError, path + "." + it.key() + ": expected a number");
    if (f->real) t.*(f->real) = it.value().get<double>();
    else t.*(f->whole) = it.value().get<int>();
  }
}

AcceptanceTolerances tolerances_from(const std::vector<Scenario>& scenarios) {
  AcceptanceTolerances t;
  for (const auto& s : scenarios)
    if (auto it = s.acceptance.find("tolerances"); it != s.acceptance.end())
      apply_overrides(t, *it, s.name + ".acceptance.tolerances");
  return t;
}

std::string criterion_title(int id) {
  static const char* const titles[kCriteria] = {
      "twist action gap",     "classical cross-check", "recurrent linking exactness", "integer identities",
      "iteration formula",    "width growth",          "component constancy",         "shear example",
      "Kac identity",         "coboundary solve",      "morphism property",           "oracle equivalence"};
  return id >= 1 && id <= kCriteria ? titles[id - 1] : "unknown";
}

std::string format_result(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "AC%02d %-28s %s", r.id, r.title.c_str(), r.pass ? "PASS" : "FAIL");
  char tail[32];
  std::snprintf(tail, sizeof tail, " [%.1f s]", r.seconds);
  return std::string(head) + "  " + r.detail + tail;
}

AcceptanceRunner::AcceptanceRunner(std::vector<Scenario> scenarios, AcceptanceTolerances tol)
    : scenarios_(std::move(scenarios)), tol_(tol) {}

std::vector<const Scenario*> AcceptanceRunner::declaring(int id) const {
  std::vector<const Scenario*> out;
  for (const auto& s : scenarios_) {
    auto it = s.acceptance.find("criteria");
    if (it == s.acceptance.end()) continue;
    for (const auto& c : *it)
      if (c.is_number_integer() && c.get<int>() == id) out.push_back(&s);
  }
  return out;
}

const Scenario& AcceptanceRunner::require(int id, const std::string& name) const {
  for (const Scenario* s : declaring(id))
    if (name.empty() || s->name == name) return *s;
  fail(ErrorKind::ConfigError, "no scenario declares criterion " + std::to_string(id) +
                                   (name.empty() ? std::string() : " with name " + name));
}

CriterionResult AcceptanceRunner::run(int id) {
  CriterionResult r;
  Stopwatch sw;
  try {
    switch (id) {
      case 1: r = twist_gap(); break;
      case 2: r = classical(); break;
      case 3: r = rational(); break;
      case 4: r = identities(); break;
      case 5: r = iteration(); break;
      case 6: r = width_growth(); break;
      case 7: r = components(); break;
      case 8: r = shear_example(); break;
      case 9: r = kac(); break;
      case 10: r = coboundary(); break;
      case 11: r = morphism(); break;
      case 12: r = oracle(); break;
      default: fail(ErrorKind::ConfigError, "unknown criterion " + std::to_string(id));
    }
  } catch (const Error& e) {
    r.pass = false;
    r.detail = e.what();
  }
  r.id = id;
  r.title = criterion_title(id);
  r.seconds = sw.seconds();
  return r;
}

std::vector<CriterionResult> AcceptanceRunner::run_all(const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) {
    out.push_back(run(id));
    if (on_result) on_result(out.back());
  }
  return out;
}

PairValue AcceptanceRunner::gap_value() {
  if (!gap_) {
    const Scenario& s = require(1);
    const Isotopy I = build_isotopy(s);
    const auto lifts = resolve_lifts(s, I);
    ActionConfig cfg = action_config(s);
    cfg.quad.grid_n = tol_.gap_grid;
    Stopwatch sw;
    gap_ = action_difference(I, Measure::lebesgue(I.torus()), lift_of(lifts, "center", s.name),
                             lift_of(lifts, "exterior", s.name), cfg);
    gap_seconds_ = sw.seconds();
  }
  return *gap_;
}

CriterionResult AcceptanceRunner::twist_gap() {
  const PairValue v = gap_value();
  const double dev = std::abs(std::abs(v.value) - kGap);
  CriterionResult r;
  r.pass = dev <= tol_.gap_tol && gap_seconds_ < tol_.gap_runtime_s;
  r.detail = "i_mu=" + g12(v.value) + " err=" + g(v.error) + " |dev|=" + g(dev) + " tol=" + g(tol_.gap_tol) +
             " grid=" + std::to_string(tol_.gap_grid) + " runtime=" + g(gap_seconds_) + "s<" + g(tol_.gap_runtime_s);
  return r;
}

CriterionResult AcceptanceRunner::classical() {
  const Scenario& s = require(2);
  const Isotopy I = build_isotopy(s);
  const auto lifts = resolve_lifts(s, I);
  const Torus& T = I.torus();
  const HamiltonianData H = twist_hamiltonian(T, twist_center(s), twist_profile(s));
  const double ac = classical_action(H, I, T.project(lift_of(lifts, "center", s.name)));
  const double ae = classical_action(H, I, T.project(lift_of(lifts, "exterior", s.name)));
  const double diff = ac - ae;
  const double dev = std::abs(std::abs(diff) - kGap);
  const PairValue v = gap_value();
  const double match = std::abs(std::abs(diff) - std::abs(v.value));
  const double combined = v.error + tol_.classical_tol;
  CriterionResult r;
  r.pass = dev <= tol_.classical_tol && match <= combined;
  r.detail = "A(center)-A(exterior)=" + g12(diff) + " |dev|=" + g(dev) + " tol=" + g(tol_.classical_tol) +
             " vs |i_mu|: " + g(match) + "<=" + g(combined) + " ratio=" + g12(diff / v.value);
  return r;
}

CriterionResult AcceptanceRunner::rational() {
  const Scenario& s = require(3);
  const Isotopy I = build_isotopy(s);
  const auto lifts = resolve_lifts(s, I);
  const PlanePoint a = lift_of(lifts, "center", s.name), b = lift_of(lifts, "exterior", s.name);
  const double angle = s.acceptance.value("angle", 0.7);
  const ActionConfig cfg = action_config(s);
  CriterionResult r;
  r.pass = true;
  double slowest = 0.0;
  for (const auto& pq : s.acceptance.at("radii")) {
    const long p = pq[0].get<long>(), q = pq[1].get<long>();
    const double rad = static_cast<double>(p) / static_cast<double>(q);
    const TorusPoint z = I.torus().reduce(a.x + rad * std::cos(angle), a.y + rad * std::sin(angle));
    Stopwatch sw;
    const RecurrentLinking rl =
        recurrent_linking(I, a, b, z, disk_avoiding(I.torus(), z, {a, b}), cfg.conv, cfg.link);
    const double t = sw.seconds();
    slowest = std::max(slowest, t);
    const bool ok = rl.exact && *rl.exact == Rational::make(p, q) && t < tol_.rational_runtime_s;
    r.pass = r.pass && ok;
    r.detail += std::to_string(p) + "/" + std::to_string(q) + "->" +
                (rl.exact ? std::to_string(rl.exact->num) + "/" + std::to_string(rl.exact->den) : g(rl.value)) +
                (ok ? " " : "(!) ");
  }
  r.detail += "slowest=" + g(slowest) + "s<" + g(tol_.rational_runtime_s);
  return r;
}

CriterionResult AcceptanceRunner::identities() {
  const auto sources = declaring(4);
  if (sources.empty()) fail(ErrorKind::ConfigError, "no scenario declares criterion 4");
  Stopwatch sw;
  long failures = 0;
  int done = 0, nontrivial = 0;
  std::string first_failure;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) {
      ++failures;
      if (first_failure.empty()) first_failure = what;
    }
  };
  for (int c = 0; c < tol_.configurations; ++c) {
    const Scenario& s = *sources[static_cast<std::size_t>(c) % sources.size()];
    const Isotopy I = build_isotopy(s);
    const Torus& T = I.torus();
    const LiftPool pool{T, twist_center(s), twist_profile(s)};
    const bool plateau = pool.prof.shape == RadialProfile::Shape::Plateau;
    const CounterRng rng(s.seed, 0x4a00 + static_cast<std::uint64_t>(c));
    std::uint64_t ctr = 0;
    const ActionConfig cfg = action_config(s);
    const std::string tag = s.name + "#" + std::to_string(c);

    // Three lifts with distinct projections.
    std::vector<PlanePoint> L;
    std::vector<int> kinds = plateau ? std::vector<int>{0, 2, 1} : std::vector<int>{0, 1, 1};
    for (int kind : kinds) {
      while (true) {
        const PlanePoint p = pool.draw(rng, ctr, kind);
        bool distinct = true;
        for (const auto& q : L)
          if (T.distance(T.project(p), T.project(q)) < 0.05) distinct = false;
        if (distinct) {
          L.push_back(p);
          break;
        }
      }
    }
    const TorusPoint z = pool.moving(rng, ctr);
    const ReturnDisk U = disk_avoiding(T, z, L);
    const int n = static_cast<int>(rng.integer(ctr++, 2, 5));
    const int n1 = static_cast<int>(rng.integer(ctr++, 1, n - 1));
    const DeckElement al{rng.integer(ctr++, -2, 2), rng.integer(ctr++, -2, 2)};

    const PairFrame ab(I, L[0], L[1], cfg.link), bc(I, L[1], L[2], cfg.link), ca(I, L[2], L[0], cfg.link);
    const long Lab = birkhoff_L(ab, z, U, n);
    nontrivial += Lab != 0;

    const ReturnOrbit orb = return_orbit(I, U, z, n1);
    check(Lab == birkhoff_L(ab, z, U, n1) + birkhoff_L(ab, orb.points.back(), U, n - n1), tag + " additivity");
    check(Lab + birkhoff_L(bc, z, U, n) + birkhoff_L(ca, z, U, n) == 0, tag + " L_n cocycle");
    check(Lab == birkhoff_L(I, T.apply(al, L[0]), T.apply(al, L[1]), z, U, n, cfg.link), tag + " L_n deck");

    const long lp = linking_pair(I, L[0], L[1], cfg.link.tol);
    check(lp == linking_pair(I, T.apply(al, L[0]), T.apply(al, L[1]), cfg.link.tol), tag + " linking deck");
    check(lp == linking_pair(I, L[1], L[0], cfg.link.tol), tag + " linking symmetry");

    PropertySamples ps;
    ps.lifts = L;
    ps.deck_trials = 2;
    ps.max_shell = 3;
    ps.seed = s.seed + static_cast<std::uint64_t>(c);
    const PropertyReport pr = check_linking_properties(I, ps, cfg.link.tol);
    check(pr.p3, tag + " P3");
    check(pr.p4, tag + " P4");
    ++done;
  }
  const double t = sw.seconds();
  CriterionResult r;
  r.pass = failures == 0 && done >= tol_.configurations && t < tol_.identities_runtime_s;
  r.detail = std::to_string(done) + " configurations (" + std::to_string(nontrivial) + " with L_n != 0), " +
             std::to_string(failures) + " violations" +
             (first_failure.empty() ? "" : " (first: " + first_failure + ")") + " runtime=" + g(t) + "s<" +
             g(tol_.identities_runtime_s);
  return r;
}

CriterionResult AcceptanceRunner::iteration() {
  CriterionResult r;
  r.pass = true;
  // Exact part on the plateau twist.
  const Scenario& ps = require(5, "plateau");
  const Isotopy P = build_isotopy(ps);
  const auto pl = resolve_lifts(ps, P);
  long checked = 0;
  for (int n : {2, 3, 5}) {
    const Isotopy Pn = power(P, n);
    for (std::size_t i = 0; i < pl.size(); ++i)
      for (std::size_t j = i + 1; j < pl.size(); ++j) {
        const long base = linking_pair(P, pl[i].lift, pl[j].lift);
        const long it = linking_pair(Pn, pl[i].lift, pl[j].lift);
        ++checked;
        if (it != n * base) {
          r.pass = false;
          r.detail += "linking_pair(F^" + std::to_string(n) + ")=" + std::to_string(it) + " != " +
                      std::to_string(n) + "*" + std::to_string(base) + "; ";
        }
      }
  }
  r.detail += std::to_string(checked) + " exact linking_pair checks; ";

  const Scenario& ts = require(5, "twist");
  const Isotopy I = build_isotopy(ts);
  const auto tl = resolve_lifts(ts, I);
  ActionConfig cfg = action_config(ts);
  cfg.quad.grid_n = tol_.iteration_grid;
  const IterationReport rep = verify_iteration(I, Measure::lebesgue(I.torus()), lift_of(tl, "center", ts.name),
                                               lift_of(tl, "exterior", ts.name), {2, 3, 5}, cfg);
  for (const auto& e : rep.entries) {
    const bool ok = e.deviation < tol_.iteration_rel;
    r.pass = r.pass && ok;
    r.detail += "q=" + std::to_string(e.q) + " ratio=" + g12(e.ratio) + (ok ? " " : "(!) ");
  }
  r.detail += "rel tol=" + g(tol_.iteration_rel) + " grid=" + std::to_string(tol_.iteration_grid);
  return r;
}

CriterionResult AcceptanceRunner::width_growth() {
  const Scenario& s = require(6);
  const Isotopy I = build_isotopy(s);
  const auto lifts = resolve_lifts(s, I);
  ActionConfig cfg = action_config(s);
  cfg.quad.grid_n = tol_.width_grid;
  const std::vector<LabeledLift> pair{{"center", lift_of(lifts, "center", s.name)},
                                      {"exterior", lift_of(lifts, "exterior", s.name)}};
  const SchwarzReport rep = verify_schwarz(I, Measure::lebesgue(I.torus()), pair, 5, cfg);
  const double rel = std::abs(rep.slope - kGap) / kGap;
  CriterionResult r;
  r.pass = rel < tol_.slope_rel && rep.nonconstant && rep.widths.size() == 5;
  r.detail = "widths=[";
  for (std::size_t k = 0; k < rep.widths.size(); ++k) r.detail += (k ? " " : "") + g(rep.widths[k]);
  r.detail += "] slope=" + g12(rep.slope) + " rel err=" + g(rel) + " tol=" + g(tol_.slope_rel) + " (" + rep.verdict + ")";
  return r;
}

CriterionResult AcceptanceRunner::components() {
  const Scenario& s = require(7);
  const Isotopy I = build_isotopy(s);
  const auto lifts = resolve_lifts(s, I);
  const FixedPointSet fix = find_fixed_points(I, 64);
  const ActionReport rep = solve_action_function(I, build_measure(s, I), lifts, action_config(s));
  std::size_t center = lifts.size();
  for (std::size_t k = 0; k < lifts.size(); ++k)
    if (lifts[k].label == "center") center = k;
  if (center == lifts.size()) fail(ErrorKind::ConfigError, s.name + ": no center lift");
  double exterior_max = 0.0, gap_dev = 0.0;
  long exterior = 0;
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    if (i == center) continue;
    ++exterior;
    gap_dev = std::max(gap_dev, std::abs(std::abs(rep.l[i] - rep.l[center]) - kGap));
    for (std::size_t j = i + 1; j < lifts.size(); ++j)
      if (j != center) exterior_max = std::max(exterior_max, std::abs(rep.at(i, j)));
  }
  CriterionResult r;
  r.pass = exterior >= 10 && exterior_max < tol_.component_tol && gap_dev <= tol_.component_gap_tol &&
           fix.components == 2;
  r.detail = std::to_string(exterior) + " exterior lifts, max pairwise |i_mu|=" + g(exterior_max) + "<" +
             g(tol_.component_tol) + ", gap dev=" + g(gap_dev) + "<=" + g(tol_.component_gap_tol) +
             ", fixed components=" + std::to_string(fix.components);
  return r;
}

CriterionResult AcceptanceRunner::shear_example() {
  const Scenario& s = require(8);
  const Isotopy I = build_isotopy(s);
  const Measure mu = build_measure(s, I);
  const FixedPointSet fix = find_fixed_points(I, 64);
  const double disp_dev = std::abs(fix.min_displacement - I.torus().modulus() / 10.0);
  check_invariant(mu, I, tol_.invariance_tol);
  const RotationMeasure rho = rotation_vector_measure(I, mu, action_config(s));
  const SchwarzReport sch = verify_schwarz(I, mu, {}, 5, action_config(s));
  CriterionResult r;
  r.pass = fix.points.empty() && disp_dev <= tol_.displacement_tol && rho.integral.x == 0.0 &&
           rho.integral.y == 0.0 && sch.hypothesis_violated;
  r.detail = "fixed points=" + std::to_string(fix.points.size()) + " min displacement=" + g12(fix.min_displacement) +
             " (dev " + g(disp_dev) + ") invariant to " + g(tol_.invariance_tol) + " rho=(" + g(rho.integral.x) +
             "," + g(rho.integral.y) + ") verdict: " + sch.verdict;
  return r;
}

CriterionResult AcceptanceRunner::kac() {
  const auto scen = declaring(9);
  CriterionResult r;
  r.pass = scen.size() >= 3;
  for (const Scenario* s : scen) {
    const Isotopy I = build_isotopy(*s);
    const KacReport k = kac_check(I, build_measure(*s, I), disk_of(*s), tol_.kac_tol);
    r.pass = r.pass && k.pass;
    r.detail += s->name + ": " + g12(k.lhs) + " vs " + g12(k.rhs) + (k.pass ? "; " : " (!); ");
  }
  r.detail += std::to_string(scen.size()) + " scenarios, tol=" + g(tol_.kac_tol);
  return r;
}

CriterionResult AcceptanceRunner::coboundary() {
  CriterionResult r;
  r.pass = true;
  int solved = 0;
  for (const auto& s : scenarios_) {
    if (s.lifts.size() < 2) continue;
    const Isotopy I = build_isotopy(s);
    const Measure mu = build_measure(s, I);
    ActionConfig cfg = action_config(s);
    cfg.enforce_cocycle = false;
    const ActionReport rep = solve_action_function(I, mu, resolve_lifts(s, I), cfg);
    const double bound = tol_.cocycle_factor * rep.quad_error + 1e-12;
    const bool ok = rep.cocycle_residual <= bound && rep.reconstruction_residual <= rep.cocycle_residual + 1e-12;
    r.pass = r.pass && ok;
    ++solved;
    r.detail += s.name + ": " + g(rep.cocycle_residual) + "<=" + g(bound) + (ok ? "; " : " (!); ");
  }
  r.pass = r.pass && solved > 0;
  return r;
}

CriterionResult AcceptanceRunner::morphism() {
  const Scenario& s = require(11);
  const Torus T(s.L);
  const Measure mu = Measure::lebesgue(T);
  const ActionConfig cfg = action_config(s);
  const RotationMeasure whole = rotation_vector_measure(build_isotopy(s), mu, cfg);
  PlanePoint parts{0.0, 0.0};
  for (const auto& v : s.acceptance.at("parts")) {
    const PlanePoint u{v[0].get<double>(), v[1].get<double>()};
    const RotationMeasure one = rotation_vector_measure(make_rigid_rotation(T, u), mu, cfg);
    parts = parts + one.mean;
  }
  const double dev = std::max(std::abs(whole.mean.x - parts.x), std::abs(whole.mean.y - parts.y));
  CriterionResult r;
  r.pass = dev <= tol_.morphism_tol;
  r.detail = "rho(compose)=(" + g12(whole.mean.x) + "," + g12(whole.mean.y) + ") sum of parts=(" + g12(parts.x) + "," +
             g12(parts.y) + ") dev=" + g(dev) + " tol=" + g(tol_.morphism_tol);
  return r;
}

CriterionResult AcceptanceRunner::oracle() {
  const auto sources = declaring(12);
  if (sources.empty()) fail(ErrorKind::ConfigError, "no scenario declares criterion 12");
  long agree = 0, total = 0;
  std::string first;
  for (int c = 0; c < tol_.oracle_instances; ++c) {
    const Scenario& s = *sources[static_cast<std::size_t>(c) % sources.size()];
    const Isotopy I = build_isotopy(s);
    const Torus& T = I.torus();
    const LiftPool pool{T, twist_center(s), twist_profile(s)};
    const bool plateau = pool.prof.shape == RadialProfile::Shape::Plateau;
    const CounterRng rng(s.seed, 0x0c00 + static_cast<std::uint64_t>(c));
    std::uint64_t ctr = 0;
    const int ka = static_cast<int>(rng.integer(ctr++, 0, plateau ? 2 : 1));
    const PlanePoint a = pool.draw(rng, ctr, ka);
    PlanePoint b;
    do {
      b = pool.draw(rng, ctr, ka == 1 ? 0 : 1);
    } while (T.distance(T.project(a), T.project(b)) < 0.05);
    const TorusPoint z = pool.moving(rng, ctr);
    const ReturnDisk U = disk_avoiding(T, z, {a, b});
    const int n = static_cast<int>(rng.integer(ctr++, 1, 4));
    const LinkingConfig cfg = action_config(s).link;
    const long direct = birkhoff_L(I, a, b, z, U, n, cfg);
    const long wind = winding_difference_oracle(I, a, b, z, U, n, cfg);
    ++total;
    if (direct == wind) ++agree;
    else if (first.empty())
      first = s.name + "#" + std::to_string(c) + ": " + std::to_string(direct) + " vs " + std::to_string(wind);
  }
  CriterionResult r;
  r.pass = agree == total && total >= tol_.oracle_instances;
  r.detail = std::to_string(agree) + "/" + std::to_string(total) + " closed-loop instances agree" +
             (first.empty() ? "" : " (first mismatch " + first + ")");
  return r;
}

VerifyResult verify_scenario(const Scenario& s) {
  VerifyResult out;
  const Isotopy I = build_isotopy(s);
  const Measure mu = build_measure(s, I);
  const ActionConfig cfg = action_config(s);
  json checks = json::array();
  auto record = [&](const std::string& name, bool ok, json detail) {
    out.pass = out.pass && ok;
    detail["check"] = name;
    detail["pass"] = ok;
    checks.push_back(detail);
  };
  const json& e = s.expect;
  if (e.contains("fixed_points")) {
    const FixedPointSet fix = find_fixed_points(I, 64, s.tolerances.geom);
    const long want = e["fixed_points"].get<long>();
    record("fixed_points", static_cast<long>(fix.points.size()) == want,
           {{"count", fix.points.size()}, {"expected", want}, {"min_displacement", fix.min_displacement}});
  }
  if (e.contains("rho")) {
    const RotationMeasure rho = rotation_vector_measure(I, mu, cfg);
    const double want_x = e["rho"][0].get<double>(), want_y = e["rho"][1].get<double>();
    const double tol = e.value("rho_tol", 1e-6);
    const double dev = std::max(std::abs(rho.mean.x - want_x), std::abs(rho.mean.y - want_y));
    record("rho", dev <= tol, {{"rho", to_json(rho)}, {"expected", e["rho"]}, {"tolerance", tol}, {"deviation", dev}});
  }
  if (e.contains("width")) {
    const ActionReport rep = solve_action_function(I, mu, resolve_lifts(s, I), cfg);
    const double want = e["width"].get<double>();
    const double tol = e.value("width_tol", s.tolerances.quad);
    const double dev = std::abs(rep.width - want);
    record("width", dev <= tol,
           {{"width", rep.width}, {"expected", want}, {"tolerance", tol}, {"deviation", dev}, {"action", to_json(rep)}});
  }
  if (mu.kind() == Measure::Kind::Atomic && s.acceptance.contains("disk")) {
    const KacReport k = kac_check(I, mu, disk_of(s));
    record("kac", k.pass, to_json(k));
  }
  if (s.lifts.empty() && e.contains("fixed_points")) {
    const SchwarzReport sch = verify_schwarz(I, mu, {}, 5, cfg);
    record("schwarz", true, to_json(sch));
  }
  out.report = {{"checks", checks}, {"pass", out.pass}};
  return out;
}

} // namespace tact
