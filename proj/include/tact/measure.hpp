#pragma once

#include <string>
#include <vector>

#include "tact/isotopy.hpp"

namespace tact {

struct Atom {
  TorusPoint z;
  double w = 0.0;
};

class Measure {
public:
  enum class Kind { Atomic, Grid };

  static Measure lebesgue(const Torus& T);
  // Restriction of area to a disk.
  static Measure disk_lebesgue(const Torus& T, TorusPoint center, double radius);
  static Measure atomic(const Torus& T, std::vector<Atom> atoms);

  Kind kind() const noexcept { return kind_; }
  const Torus& torus() const noexcept { return torus_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  double density(TorusPoint z) const noexcept;
  double total_mass() const noexcept { return mass_; }
  bool full_support() const noexcept { return full_support_; }
  // Lebesgue is invariant under every area-preserving built-in.
  bool invariant_by_construction() const noexcept { return by_construction_; }
  const std::string& name() const noexcept { return name_; }

private:
  explicit Measure(const Torus& T) : torus_(T) {}

  Kind kind_ = Kind::Grid;
  Torus torus_;
  std::vector<Atom> atoms_;
  TorusPoint disk_center_;
  double disk_radius_ = -1.0;  // negative: no disk restriction
  double mass_ = 0.0;
  bool full_support_ = false;
  bool by_construction_ = false;
  std::string name_;
};

// Atomic measures: F must permute the atoms preserving weights to tol.
// Throws ConfigError otherwise. Grid measures pass when flagged invariant
// by construction; disk restrictions are the caller's responsibility.
void check_invariant(const Measure& mu, const Isotopy& I, double tol = 1e-9);

// Equal-weight atoms along the periodic orbit of z (total weight `mass`).
std::vector<Atom> periodic_orbit_atoms(const Isotopy& I, TorusPoint z, double mass, long max_period = 100000,
                                       double tol = 1e-9);

} // namespace tact
