#include "tact/measure.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tact/error.hpp"
#include "tact/reduce.hpp"

namespace tact {

Measure Measure::lebesgue(const Torus& T) {
  Measure m(T);
  m.kind_ = Kind::Grid;
  m.mass_ = T.modulus() * T.modulus();
  m.full_support_ = true;
  m.by_construction_ = true;
  m.name_ = "lebesgue";
  return m;
}

Measure Measure::disk_lebesgue(const Torus& T, TorusPoint center, double radius) {
  if (!(radius > 0.0) || !(radius < 0.5 * T.modulus()))
    fail(ErrorKind::ConfigError, "disk measure radius must lie in (0, L/2)");
  Measure m(T);
  m.kind_ = Kind::Grid;
  m.disk_center_ = T.reduce(center.x, center.y);
  m.disk_radius_ = radius;
  m.mass_ = std::numbers::pi * radius * radius;
  m.name_ = "disk-lebesgue";
  return m;
}

Measure Measure::atomic(const Torus& T, std::vector<Atom> atoms) {
  if (atoms.empty()) fail(ErrorKind::ConfigError, "atomic measure needs at least one atom");
  std::vector<double> w;
  for (auto& a : atoms) {
    if (!(a.w >= 0.0) || !std::isfinite(a.w)) fail(ErrorKind::ConfigError, "atom weights must be non-negative");
    a.z = T.reduce(a.z.x, a.z.y);
    w.push_back(a.w);
  }
  Measure m(T);
  m.kind_ = Kind::Atomic;
  m.atoms_ = std::move(atoms);
  m.mass_ = pairwise_sum(w);
  if (!(m.mass_ > 0.0)) fail(ErrorKind::ConfigError, "atomic measure has zero mass");
  m.name_ = "atomic";
  return m;
}

double Measure::density(TorusPoint z) const noexcept {
  if (kind_ == Kind::Atomic) return 0.0;
  if (disk_radius_ < 0.0) return 1.0;
  return torus_.distance(z, disk_center_) < disk_radius_ ? 1.0 : 0.0;
}

void check_invariant(const Measure& mu, const Isotopy& I, double tol) {
  if (mu.kind() == Measure::Kind::Grid) return;
  const Torus& T = I.torus();
  const auto& atoms = mu.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const TorusPoint fz = I.map(atoms[i].z);
    bool matched = false;
    for (const auto& b : atoms)
      if (T.distance(fz, b.z) < tol && std::abs(b.w - atoms[i].w) <= tol * std::max(1.0, atoms[i].w)) {
        matched = true;
        break;
      }
    if (!matched)
      fail(ErrorKind::ConfigError, "measure is not invariant: image of atom " + std::to_string(i) + " is not an atom");
  }
}

std::vector<Atom> periodic_orbit_atoms(const Isotopy& I, TorusPoint z, double mass, long max_period, double tol) {
  const Torus& T = I.torus();
  z = T.reduce(z.x, z.y);
  std::vector<TorusPoint> orbit{z};
  TorusPoint w = z;
  for (long k = 1; k <= max_period; ++k) {
    w = I.map(w);
    if (T.distance(w, z) < tol) {
      std::vector<Atom> atoms;
      for (const auto& p : orbit) atoms.push_back({p, mass / static_cast<double>(orbit.size())});
      return atoms;
    }
    orbit.push_back(w);
  }
  fail(ErrorKind::ConfigError, "point is not periodic within the period cap");
}

} // namespace tact
