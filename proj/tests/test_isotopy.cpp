#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "tact/error.hpp"
#include "tact/isotopy.hpp"
#include "tact/random.hpp"

using namespace tact;

namespace {

const Torus T(4.0);

double dist(PlanePoint a, PlanePoint b) { return norm(a - b); }

const Isotopy& hs() {
  static const Isotopy h = make_horizontal_shear(T, 0.3);
  return h;
}

std::vector<Isotopy> builtins() {
  const Isotopy tw = make_twist(T, {2.0, 2.0});
  const Isotopy pl = make_twist(T, {2.0, 2.0}, {RadialProfile::Shape::Plateau, 1.0});
  const Isotopy sh = make_shear(T);
  const Isotopy rr = make_rigid_rotation(T, {0.3, -0.7});
  const Isotopy hs = make_horizontal_shear(T, 0.3);
  return {tw, pl, sh, rr, hs, compose(tw, rr), inverse(pl), power(tw, 3), conjugate(tw, hs)};
}

// Jacobian determinant of the time-one map by central differences.
double jacobian(const Isotopy& I, PlanePoint p, double h = 1e-6) {
  const PlanePoint dx = I.time_one(p + PlanePoint{h, 0}) - I.time_one(p - PlanePoint{h, 0});
  const PlanePoint dy = I.time_one(p + PlanePoint{0, h}) - I.time_one(p - PlanePoint{0, h});
  return cross(dx, dy) / (4.0 * h * h);
}

} // namespace

TEST_CASE("radial profiles") {
  const RadialProfile lin;
  CHECK(lin(0.25) == 0.25);
  CHECK(lin(1.0) == 0.0);
  CHECK(lin.moment(1.0) == doctest::Approx(1.0 / 3.0));
  const RadialProfile pl{RadialProfile::Shape::Plateau, 2.0};
  CHECK(pl(0.5) == 1.0);
  CHECK(pl(1.5) == doctest::Approx(0.5));
  CHECK(pl(2.5) == 0.0);
  // ∫_0^1 s ds + ∫_1^2 s(2 - s) ds = 1/2 + 2/3.
  CHECK(pl.moment(2.0) == doctest::Approx(0.5 + 2.0 / 3.0));
  // Moment against a midpoint rule.
  double m = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double s = 1.3 * (i + 0.5) / n;
    m += s * pl(s) * 1.3 / n;
  }
  CHECK(pl.moment(1.3) == doctest::Approx(m).epsilon(1e-8));
}

TEST_CASE("twist turns each circle by its profile value") {
  const Isotopy I = make_twist(T, {2.0, 2.0});
  CHECK(I.time_one({2.0, 2.0}) == PlanePoint{2.0, 2.0});
  CHECK(I.time_one({3.5, 2.0}) == PlanePoint{3.5, 2.0});
  CHECK(dist(I.time_one({2.5, 2.0}), {1.5, 2.0}) < 1e-14);
  // Half time, radius 1/2: a quarter turn counterclockwise.
  CHECK(dist(I.lifted(0.5, {2.5, 2.0}), {2.0, 2.5}) < 1e-14);
}

TEST_CASE("built-ins are deck-equivariant, start at the identity and preserve area") {
  const CounterRng rng(21);
  std::uint64_t ctr = 0;
  for (const Isotopy& I : builtins()) {
    CAPTURE(I.name());
    for (int k = 0; k < 40; ++k) {
      const PlanePoint p{rng.uniform(ctr++, 0.0, 4.0), rng.uniform(ctr++, 0.0, 4.0)};
      const DeckElement d{rng.integer(ctr++, -3, 3), rng.integer(ctr++, -3, 3)};
      const double t = rng.uniform(ctr++);
      CHECK(dist(I.lifted(0.0, p), p) < 1e-12);
      CHECK(dist(I.lifted(t, T.apply(d, p)), T.apply(d, I.lifted(t, p))) < 1e-9);
      // Stay clear of the static circle where the linear twist jumps, and of
      // its image under the conjugating shear.
      const PlanePoint c{2.0, 2.0};
      const bool jump = std::abs(norm(p - c) - 1.0) < 0.05 || std::abs(norm(hs().time_one_inverse(p) - c) - 1.0) < 0.05;
      // The shear preserves only the measure on its invariant circles.
      if (!jump && I.name().find("shear") != 0) CHECK(jacobian(I, p) == doctest::Approx(1.0).epsilon(1e-5));
    }
  }
}

TEST_CASE("inverse maps undo the time-one map") {
  const CounterRng rng(22);
  std::uint64_t ctr = 0;
  for (const Isotopy& I : builtins()) {
    CAPTURE(I.name());
    for (int k = 0; k < 20; ++k) {
      const PlanePoint p{rng.uniform(ctr++, 0.0, 4.0), rng.uniform(ctr++, 0.0, 4.0)};
      CHECK(dist(I.time_one_inverse(I.time_one(p)), p) < 1e-9);
    }
  }
}

TEST_CASE("combinators agree with composed time-one maps") {
  const Isotopy tw = make_twist(T, {2.0, 2.0}, {RadialProfile::Shape::Plateau, 1.0});
  const Isotopy hs = make_horizontal_shear(T, 0.3);
  const Isotopy sh = make_shear(T);
  const CounterRng rng(23);
  std::uint64_t ctr = 0;
  for (int k = 0; k < 50; ++k) {
    const PlanePoint p{rng.uniform(ctr++, 0.0, 4.0), rng.uniform(ctr++, 0.0, 4.0)};
    CHECK(dist(compose(tw, sh).time_one(p), sh.time_one(tw.time_one(p))) < 1e-12);
    CHECK(dist(power(sh, 3).time_one(p), sh.time_one(sh.time_one(sh.time_one(p)))) < 1e-12);
    CHECK(dist(inverse(sh).time_one(sh.time_one(p)), p) < 1e-9);
    const PlanePoint hp = hs.time_one(p);
    CHECK(dist(conjugate(tw, hs).time_one(hp), hs.time_one(tw.time_one(p))) < 1e-9);
    // Compose runs the parts on the two halves.
    CHECK(dist(compose(tw, sh).lifted(0.5, p), tw.time_one(p)) < 1e-12);
  }
  const Isotopy rr = compose(make_rigid_rotation(T, {1.0, 0.0}), make_rigid_rotation(T, {0.5, 1.0}));
  CHECK(dist(rr.time_one({0.2, 0.3}), {1.7, 1.3}) < 1e-14);
  CHECK(power(sh, 4).pieces() == 4);
}

TEST_CASE("newton inverse recovers preimages") {
  const Isotopy I = conjugate(make_twist(T, {2.0, 2.0}), make_horizontal_shear(T, 0.3));
  const CounterRng rng(24);
  for (std::uint64_t k = 0; k < 30; ++k) {
    const PlanePoint p{rng.uniform(2 * k, 0.5, 3.5), rng.uniform(2 * k + 1, 0.5, 3.5)};
    const PlanePoint y = I.time_one(p);
    CHECK(dist(I.time_one(newton_inverse(I, y)), y) < 1e-10);
  }
}

TEST_CASE("normalization fixes both lifts and has unit multiplier at the ends") {
  const Isotopy sh = make_shear(T);
  const Isotopy pl = make_twist(T, {2.0, 2.0}, {RadialProfile::Shape::Plateau, 1.0});
  const PlanePoint a{2.0, 2.0}, b{2.2, 2.0};
  const PlaneIsotopy N = normalize_fixing_two(pl, a, b);
  for (int i = 0; i <= 16; ++i) {
    const double t = i / 16.0;
    CHECK(dist(N.at(t, a), a) < 1e-12);
    CHECK(dist(N.at(t, b), b) < 1e-12);
  }
  CHECK(N.multiplier(0.0) == std::complex<double>(1.0, 0.0));
  CHECK(N.multiplier(1.0) == std::complex<double>(1.0, 0.0));
  // Inside the plateau the disk turns rigidly, so the normalization undoes it.
  CHECK(std::abs(N.multiplier(0.25) - std::polar(1.0, -std::numbers::pi / 2.0)) < 1e-12);

  const Isotopy tw = make_twist(T, {2.0, 2.0});
  const PlaneIsotopy M = normalize_fixing_two(tw, a, {3.5, 2.0});
  for (int i = 0; i <= 8; ++i) CHECK(std::abs(M.multiplier(i / 8.0) - 1.0) < 1e-15);

  CHECK_THROWS_AS(require_fixed(sh, {1.0, 1.0}), Error);
  CHECK_NOTHROW(require_fixed(tw, {3.5, 2.0}));
}

TEST_CASE("trajectories") {
  const Isotopy tw = make_twist(T, {2.0, 2.0});
  const Trajectory still = trajectory(tw, {3.5, 2.0}, 8);
  CHECK(still.degenerate);
  CHECK_FALSE(still.path.has_value());
  const Trajectory moving = trajectory(tw, {2.5, 2.0}, 8);
  REQUIRE(moving.path.has_value());
  CHECK(moving.samples.size() == 9);
  CHECK(dist(moving.samples.back(), tw.time_one({2.5, 2.0})) < 1e-14);
}
