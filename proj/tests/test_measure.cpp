#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tact/error.hpp"
#include "tact/measure.hpp"

using namespace tact;

namespace {
const Torus T(4.0);
}

TEST_CASE("measure masses and densities") {
  const Measure leb = Measure::lebesgue(T);
  CHECK(leb.total_mass() == 16.0);
  CHECK(leb.full_support());
  CHECK(leb.density({1.0, 3.0}) == 1.0);

  const Measure disk = Measure::disk_lebesgue(T, {3.9, 0.1}, 0.5);
  CHECK(disk.total_mass() == doctest::Approx(std::numbers::pi * 0.25));
  CHECK_FALSE(disk.full_support());
  CHECK(disk.density({0.1, 3.9}) == 1.0);  // across the seam
  CHECK(disk.density({2.0, 2.0}) == 0.0);
  CHECK_THROWS_AS(Measure::disk_lebesgue(T, {1, 1}, 2.5), Error);

  const Measure at = Measure::atomic(T, {{{1.0, 1.0}, 0.25}, {{5.0, -3.0}, 0.5}});
  CHECK(at.total_mass() == 0.75);
  CHECK(at.atoms()[1].z == TorusPoint{1.0, 1.0});
  CHECK_THROWS_AS(Measure::atomic(T, {}), Error);
  CHECK_THROWS_AS(Measure::atomic(T, {{{1.0, 1.0}, -1.0}}), Error);
}

TEST_CASE("invariance of atomic measures") {
  const Isotopy tw = make_twist(T, {2.0, 2.0});
  const auto orbit = periodic_orbit_atoms(tw, {2.0 + 2.0 / 5.0, 2.0}, 1.0);
  REQUIRE(orbit.size() == 5);
  double mass = 0.0;
  for (const auto& a : orbit) mass += a.w;
  CHECK(mass == doctest::Approx(1.0));
  const Measure mu = Measure::atomic(T, orbit);
  CHECK_NOTHROW(check_invariant(mu, tw));

  // Dropping one atom breaks invariance.
  std::vector<Atom> partial(orbit.begin(), orbit.end() - 1);
  CHECK_THROWS_AS(check_invariant(Measure::atomic(T, partial), tw), Error);

  // Unequal weights on one orbit break it too.
  std::vector<Atom> skew = orbit;
  skew[0].w *= 2.0;
  CHECK_THROWS_AS(check_invariant(Measure::atomic(T, skew), tw), Error);

  // Fixed atoms are invariant; an aperiodic point has no finite orbit.
  CHECK_NOTHROW(check_invariant(Measure::atomic(T, {{{3.5, 3.5}, 1.0}}), tw));
  CHECK_THROWS_AS(periodic_orbit_atoms(tw, {2.0 + (std::sqrt(5.0) - 1.0) / 2.0, 2.0}, 1.0, 1000), Error);
}
