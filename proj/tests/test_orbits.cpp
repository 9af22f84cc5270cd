#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "tact/error.hpp"
#include "tact/orbits.hpp"
#include "tact/random.hpp"

using namespace tact;

namespace {

const Torus T(4.0);
const PlanePoint kCenter{2.0, 2.0}, kExt{3.5, 2.0};

TorusPoint polar(double r, double th) { return T.reduce(2.0 + r * std::cos(th), 2.0 + r * std::sin(th)); }

// Iterates until the orbit is back in U.
long return_time_oracle(const Isotopy& I, const ReturnDisk& U, TorusPoint z) {
  TorusPoint w = z;
  for (long k = 1; k <= U.cap; ++k) {
    w = I.map(w);
    if (T.distance(w, U.center) < U.radius) return k;
  }
  return -1;
}

} // namespace

TEST_CASE("rationals are reduced with a positive denominator") {
  CHECK(Rational::make(6, -4) == Rational{-3, 2});
  CHECK(Rational::make(0, 7) == Rational{0, 1});
  CHECK(Rational::make(3, 7).value() == doctest::Approx(3.0 / 7.0));
  CHECK_THROWS_AS(Rational::make(1, 0), Error);
}

TEST_CASE("return disks are validated") {
  CHECK_THROWS_AS(check_disk(T, {{1, 1}, 1.0}), Error);
  CHECK_THROWS_AS(check_disk(T, {{1, 1}, 0.0}), Error);
  CHECK_THROWS_AS(check_disk(T, {{1, 1}, 0.1, 0}), Error);
  CHECK_NOTHROW(check_disk(T, {{1, 1}, 0.1}));
  CHECK(in_disk(T, {{0.05, 0.05}, 0.2}, {3.95, 3.95}));
}

TEST_CASE("first return times match direct iteration") {
  const Isotopy tw = make_twist(T, {2.0, 2.0});
  const CounterRng rng(41);
  std::uint64_t ctr = 0;
  for (int k = 0; k < 40; ++k) {
    const TorusPoint z = polar(rng.uniform(ctr++, 0.1, 0.9), rng.uniform(ctr++, 0.0, 6.28));
    const ReturnDisk U{z, 0.05, 10000};
    const FirstReturn fr = first_return(tw, U, z);
    CHECK(fr.tau == return_time_oracle(tw, U, z));
    CHECK(in_disk(T, U, fr.point));
  }
  // Radius 1/3: the third iterate is exactly back.
  const TorusPoint z = polar(1.0 / 3.0, 0.4);
  CHECK(first_return(tw, {z, 0.01}, z).tau == 3);

  const ReturnOrbit orb = return_orbit(tw, {z, 0.01}, z, 4);
  REQUIRE(orb.tau.size() == 4);
  long sum = 0;
  for (std::size_t j = 0; j < 4; ++j) {
    sum += orb.tau[j];
    CHECK(orb.cumulative[j] == sum);
  }
  CHECK(sum == 12);
}

TEST_CASE("orbit that never returns exhausts the cap") {
  const Isotopy rr = make_rigid_rotation(T, {std::sqrt(2.0) * 0.01, 0.0});
  CHECK_THROWS_AS(first_return(rr, {{1.0, 1.0}, 0.001, 20}, {1.0, 1.0}), Error);
}

TEST_CASE("L_n is additive along the orbit and agrees with the winding oracle") {
  const Isotopy tw = make_twist(T, {2.0, 2.0});
  const Isotopy pl = make_twist(T, {2.0, 2.0}, {RadialProfile::Shape::Plateau, 1.0});
  const CounterRng rng(42);
  std::uint64_t ctr = 0;
  int nonzero = 0;
  for (int k = 0; k < 30; ++k) {
    const Isotopy& I = k % 2 ? pl : tw;
    const double lo = k % 2 ? 0.55 : 0.1;
    const TorusPoint z = polar(rng.uniform(ctr++, lo, 0.9), rng.uniform(ctr++, 0.0, 6.28));
    const ReturnDisk U{z, 0.05, 100000};
    const PairFrame f(I, kCenter, T.apply({rng.integer(ctr++, -1, 1), 0}, kExt));
    const int n = 1 + static_cast<int>(rng.integer(ctr++, 0, 4));
    const long Ln = birkhoff_L(f, z, U, n);
    const auto terms = birkhoff_L_terms(f, z, U, n);
    long sum = 0;
    for (long t : terms) sum += t;
    CHECK(sum == Ln);
    CHECK(Ln == winding_difference_oracle(I, f.a(), f.b(), z, U, n));
    // The orbit of the opposite pair counts with the opposite sign.
    CHECK(birkhoff_L(I, f.b(), f.a(), z, U, n) == -Ln);
    nonzero += Ln != 0;
  }
  CHECK(nonzero > 10);
}

TEST_CASE("pair frames of the twist need no normalization") {
  const Isotopy tw = make_twist(T, {2.0, 2.0});
  const PairFrame f(tw, kCenter, kExt);
  CHECK(f.lambda_min() == 1.0);
  for (int i = 0; i < f.samples(); ++i) CHECK(f.lambda(i) == std::complex<double>(1.0, 0.0));
  CHECK(f.transversal(0).front() == kCenter);
  CHECK(f.transversal(0).back() == kExt);
  CHECK(f.transversal(2).size() > 2);
}

TEST_CASE("recurrent linking is the turning rate of the circle") {
  const Isotopy tw = make_twist(T, {2.0, 2.0});
  for (auto [p, q] : std::vector<std::pair<long, long>>{{1, 3}, {2, 5}, {3, 7}, {1, 2}, {5, 8}}) {
    const TorusPoint z = polar(static_cast<double>(p) / q, 1.1);
    const RecurrentLinking r = recurrent_linking(tw, kCenter, kExt, z, {z, 0.05});
    REQUIRE(r.exact.has_value());
    CHECK(*r.exact == Rational::make(p, q));
    CHECK(r.converged);
  }
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  const TorusPoint z = polar(golden, 0.3);
  const RecurrentLinking r = recurrent_linking(tw, kCenter, kExt, z, {z, 0.05});
  CHECK_FALSE(r.exact.has_value());
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(golden).epsilon(2e-3));

  // Reversing the pair flips the sign.
  CHECK(recurrent_linking(tw, kExt, kCenter, z, {z, 0.05}).value == doctest::Approx(-r.value));
}

TEST_CASE("several pairs share one orbit walk") {
  const Isotopy tw = make_twist(T, {2.0, 2.0});
  const PairFrame f1(tw, kCenter, kExt), f2(tw, kExt, kCenter), f3(tw, kExt, T.apply({0, 1}, kExt));
  const TorusPoint z = polar(0.4, 0.2);
  const auto v = recurrent_linking_multi({&f1, &f2, &f3}, z, {z, 0.05}, {});
  REQUIRE(v.size() == 3);
  REQUIRE(v[0].exact.has_value());
  CHECK(*v[0].exact == Rational::make(2, 5));
  CHECK(*v[1].exact == Rational::make(-2, 5));
  CHECK(*v[2].exact == Rational::make(0, 1));
}

TEST_CASE("rotation vectors") {
  const PlanePoint v{0.3, -0.7};
  const Isotopy rr = make_rigid_rotation(T, v);
  const RotationEstimate e = rotation_vector_point(rr, {1.0, 1.0}, {{1.0, 1.0}, 0.2, 1000000});
  CHECK(e.converged);
  CHECK(e.value.x == doctest::Approx(v.x).epsilon(1e-3));
  CHECK(e.value.y == doctest::Approx(v.y).epsilon(1e-3));

  const Isotopy tw = make_twist(T, {2.0, 2.0});
  const TorusPoint z = polar(0.4, 0.0);
  const RotationEstimate w = rotation_vector_point(tw, z, {z, 0.05});
  REQUIRE(w.exact.has_value());
  CHECK((*w.exact)[0] == Rational{0, 1});
  CHECK((*w.exact)[1] == Rational{0, 1});
}
