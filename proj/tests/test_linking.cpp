#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "tact/error.hpp"
#include "tact/linking.hpp"
#include "tact/random.hpp"

using namespace tact;

namespace {

const Torus T(4.0);

Isotopy plateau() { return make_twist(T, {2.0, 2.0}, {RadialProfile::Shape::Plateau, 1.0}); }

// Turns of t -> F_t(q) - F_t(p), summed over a dense uniform sampling.
long degree_oracle(const Isotopy& I, PlanePoint p, PlanePoint q, int steps = 4096) {
  double total = 0.0;
  PlanePoint prev = q - p;
  for (int i = 1; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    const PlanePoint v = I.lifted(t, q) - I.lifted(t, p);
    total += std::atan2(cross(prev, v), dot(prev, v));
    prev = v;
  }
  const double turns = total / (2.0 * std::numbers::pi);
  REQUIRE(std::abs(turns - std::round(turns)) < 1e-9);
  return std::lround(turns);
}

} // namespace

TEST_CASE("linking of fixed lifts against the angle-sum oracle") {
  const Isotopy pl = plateau();
  const Isotopy tw = make_twist(T, {2.0, 2.0});
  const PlanePoint center{2.0, 2.0}, inner{2.3, 2.0}, ext{3.5, 2.0};
  CHECK(linking_pair(pl, center, inner) == 1);
  CHECK(linking_pair(pl, center, inner) == degree_oracle(pl, center, inner));
  CHECK(linking_pair(pl, center, ext) == 0);
  CHECK(linking_pair(pl, inner, ext) == degree_oracle(pl, inner, ext));
  CHECK(linking_pair(tw, center, ext) == 0);

  const CounterRng rng(31);
  std::uint64_t ctr = 0;
  for (int k = 0; k < 40; ++k) {
    const double r1 = rng.uniform(ctr++, 0.0, 0.45), r2 = rng.uniform(ctr++, 0.05, 0.45);
    const double a1 = rng.uniform(ctr++, 0.0, 6.28), a2 = rng.uniform(ctr++, 0.0, 6.28);
    const PlanePoint p{2.0 + r1 * std::cos(a1), 2.0 + r1 * std::sin(a1)};
    const PlanePoint q{2.0 + r2 * std::cos(a2), 2.0 + r2 * std::sin(a2)};
    if (norm(p - q) < 1e-3) continue;
    const DeckElement d{rng.integer(ctr++, -2, 2), rng.integer(ctr++, -2, 2)};
    const PlanePoint qd = T.apply(d, q);
    const long l = linking_pair(pl, p, qd);
    CHECK(l == degree_oracle(pl, p, qd));
    CHECK(l == linking_pair(pl, qd, p));
    const DeckElement e{rng.integer(ctr++, -2, 2), rng.integer(ctr++, -2, 2)};
    CHECK(l == linking_pair(pl, T.apply(e, p), T.apply(e, qd)));
    CHECK(linking_pair(power(pl, 3), p, qd) == 3 * l);
  }
}

TEST_CASE("linking rejects lifts that are not fixed") {
  const Isotopy pl = plateau();
  CHECK_THROWS_AS(linking_pair(pl, {2.0, 2.0}, {2.75, 2.0}), Error);
  try {
    linking_pair(pl, {2.0, 2.0}, {2.75, 2.0});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotFixed);
  }
}

TEST_CASE("lift sums over a contractible fixed point") {
  const Isotopy pl = plateau();
  const PlanePoint center{2.0, 2.0}, ext{3.5, 2.0};
  const TorusPoint inner{2.25, 2.1};
  // Only the lift of the inner point in the same disk turns around the center.
  CHECK(linking_at_fixed(pl, center, ext, inner) == 1);
  CHECK(linking_at_fixed(pl, ext, center, inner) == -1);
  CHECK(linking_at_fixed(pl, center, T.apply({1, -1}, center), inner) == 0);

  // Oracle: explicit sum over the shells of lifts.
  long oracle = 0;
  for (long m = -3; m <= 3; ++m)
    for (long n = -3; n <= 3; ++n) {
      const PlanePoint w = T.apply({m, n}, T.base_lift(inner));
      oracle += degree_oracle(pl, center, w, 512) - degree_oracle(pl, ext, w, 512);
    }
  CHECK(oracle == 1);
  const LiftSum S(pl, center);
  CHECK(S(inner) == 1);
}

TEST_CASE("linking matrix and the bound diagnostic") {
  const Isotopy pl = plateau();
  const std::vector<PlanePoint> lifts{{2.0, 2.0}, {2.3, 2.0}, {3.5, 2.0}, {6.0, 2.0}, {2.1, 5.9}};
  const WbReport wb = wb_diagnostic(pl, lifts);
  CHECK(wb.matrix.at(0, 1) == 1);
  CHECK(wb.matrix.at(0, 3) == 0);
  CHECK(wb.matrix.at(4, 3) == wb.matrix.at(3, 4));
  CHECK(wb.matrix.max_abs == 1);
  CHECK(wb.global_bound >= wb.matrix.max_abs);
  for (std::size_t i = 0; i < lifts.size(); ++i) CHECK(wb.row_bound[i] >= 0);
}

TEST_CASE("fixed point search") {
  const FixedPointSet sh = find_fixed_points(make_shear(T), 32);
  CHECK(sh.points.empty());
  CHECK(sh.min_displacement == doctest::Approx(0.4).epsilon(1e-9));

  const FixedPointSet tw = find_fixed_points(make_twist(T, {2.0, 2.0}), 32);
  CHECK(tw.components == 2);
  bool has_center = false;
  for (const auto& p : tw.points) {
    CHECK(p.contractible);
    CHECK(p.residual < 1e-9);
    if (T.distance(p.z, {2.0, 2.0}) < 1e-9) has_center = true;
  }
  CHECK(has_center);

  // The rigid translation by a deck vector fixes every point, non-contractibly.
  const FixedPointSet rr = find_fixed_points(make_rigid_rotation(T, {4.0, 0.0}), 8);
  for (const auto& p : rr.points) CHECK_FALSE(p.contractible);
}

TEST_CASE("linking properties hold on random plateau lifts") {
  const Isotopy pl = plateau();
  PropertySamples s;
  s.lifts = {{2.0, 2.0}, {2.2, 2.1}, {3.5, 2.0}, {1.8, 1.7}};
  s.perturbation = 0.0;
  s.deck_trials = 6;
  s.max_shell = 3;
  s.seed = 9;
  const PropertyReport r = check_linking_properties(pl, s);
  CHECK(r.pass());
  CHECK(r.vanishing_shell < s.max_shell);
  CHECK(r.empirical_k > 0.0);
}
