#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "tact/cover.hpp"
#include "tact/error.hpp"
#include "tact/random.hpp"

using namespace tact;

namespace {

// Signed crossings of the rightward ray from w, counted edge by edge.
long ray_winding(const std::vector<PlanePoint>& loop, PlanePoint w) {
  long wn = 0;
  for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
    const PlanePoint a = loop[i], b = loop[i + 1];
    if (a.y <= w.y && b.y > w.y && orient(a, b, w) > 0) ++wn;
    else if (a.y > w.y && b.y <= w.y && orient(a, b, w) < 0) --wn;
  }
  return wn;
}

// A loop that turns k times around c with random radii.
std::vector<PlanePoint> spiral_loop(const CounterRng& rng, std::uint64_t base, PlanePoint c, int k, int n) {
  std::vector<PlanePoint> v;
  for (int i = 0; i < n; ++i) {
    const double th = 2.0 * std::numbers::pi * k * i / n;
    const double r = rng.uniform(base + static_cast<std::uint64_t>(i), 0.5, 2.0);
    v.push_back({c.x + r * std::cos(th), c.y + r * std::sin(th)});
  }
  v.push_back(v.front());
  return v;
}

} // namespace

TEST_CASE("reduce lands in the fundamental domain") {
  const Torus T(4.0);
  const CounterRng rng(1);
  for (std::uint64_t k = 0; k < 500; ++k) {
    const double x = rng.uniform(2 * k, -50.0, 50.0), y = rng.uniform(2 * k + 1, -50.0, 50.0);
    const TorusPoint z = T.reduce(x, y);
    CHECK(z.x >= 0.0);
    CHECK(z.x < 4.0);
    CHECK(z.y >= 0.0);
    CHECK(z.y < 4.0);
    CHECK(std::abs(std::remainder(x - z.x, 4.0)) < 1e-12);
  }
  CHECK(T.reduce(-1e-18, 4.0).x == 0.0);
  CHECK_THROWS_AS(Torus(0.0), Error);
}

TEST_CASE("lift_near picks the closest lift and deck_between inverts apply") {
  const Torus T(4.0);
  const CounterRng rng(2);
  for (std::uint64_t k = 0; k < 300; ++k) {
    const PlanePoint ref{rng.uniform(4 * k, -20.0, 20.0), rng.uniform(4 * k + 1, -20.0, 20.0)};
    const TorusPoint z{rng.uniform(4 * k + 2, 0.0, 4.0), rng.uniform(4 * k + 3, 0.0, 4.0)};
    const PlanePoint p = T.lift_near(z, ref);
    CHECK(std::abs(p.x - ref.x) <= 2.0 + 1e-12);
    CHECK(std::abs(p.y - ref.y) <= 2.0 + 1e-12);
    CHECK(T.distance(T.project(p), z) < 1e-12);
    const DeckElement d{rng.integer(k, -5, 5), rng.integer(k + 1000, -5, 5)};
    CHECK(T.deck_between(p, T.apply(d, p)) == d);
  }
  CHECK(T.distance({0.1, 0.1}, {3.9, 3.9}) == doctest::Approx(std::sqrt(0.08)));
}

TEST_CASE("crossing sign convention") {
  // q moving up across the x-axis segment goes from its right to its left.
  CHECK(crossing_sign({0, 0}, {2, 0}, {1, -1}, {1, 1}) == 1);
  CHECK(crossing_sign({0, 0}, {2, 0}, {1, 1}, {1, -1}) == -1);
  CHECK(crossing_sign({0, 0}, {2, 0}, {3, -1}, {3, 1}) == 0);
  CHECK(crossing_sign({0, 0}, {2, 0}, {0.5, 0.5}, {1.5, 0.5}) == 0);
  CHECK_THROWS_AS(crossing_sign({0, 0}, {2, 0}, {1, 0}, {1, 1}), Error);
  CHECK_THROWS_AS(crossing_sign({0, 0}, {2, 0}, {2, -1}, {2, 1}), Error);
  CHECK_THROWS_AS(crossing_sign({0, 0}, {2, 0}, {1, 0}, {3, 0}), Error);
}

TEST_CASE("crossing sign is antisymmetric and flips with either orientation") {
  const CounterRng rng(3);
  int nonzero = 0;
  for (std::uint64_t k = 0; k < 2000; ++k) {
    PlanePoint v[4];
    for (int i = 0; i < 4; ++i) v[i] = {rng.uniform(8 * k + 2 * i, -1, 1), rng.uniform(8 * k + 2 * i + 1, -1, 1)};
    const int s = crossing_sign(v[0], v[1], v[2], v[3]);
    nonzero += s != 0;
    CHECK(crossing_sign(v[2], v[3], v[0], v[1]) == -s);
    CHECK(crossing_sign(v[1], v[0], v[2], v[3]) == -s);
    CHECK(crossing_sign(v[0], v[1], v[3], v[2]) == -s);
  }
  CHECK(nonzero > 100);
}

TEST_CASE("winding number of random spirals matches turns and the ray-crossing count") {
  const CounterRng rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const int k = static_cast<int>(rng.integer(100000 + trial, -3, 3));
    if (k == 0) continue;
    const PlanePoint c{rng.uniform(200000 + trial, -1, 1), rng.uniform(300000 + trial, -1, 1)};
    const auto v = spiral_loop(rng, 1000 * trial, c, k, 24 * (std::abs(k) + 1));
    const PlanePath path(v);
    CHECK(winding_number(path, c) == k);
    for (std::uint64_t j = 0; j < 10; ++j) {
      const PlanePoint w{rng.uniform(400000 + 64 * trial + 2 * j, -3, 3), rng.uniform(400001 + 64 * trial + 2 * j, -3, 3)};
      try {
        CHECK(winding_number(path, w) == ray_winding(v, w));
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ClearanceViolation);
      }
    }
  }
}

TEST_CASE("winding number is additive under concatenation and odd under reversal") {
  const PlanePath a({{1, 0}, {0, 1}, {-1, 0}});
  const PlanePath b({{-1, 0}, {0, -1}, {1, 0}});
  const PlanePath loop = a.concatenated(b);
  CHECK(loop.closed());
  CHECK(winding_number(loop, {0, 0}) == 1.0);
  CHECK(winding_number(loop.reversed(), {0, 0}) == -1.0);
  CHECK(winding_number(a, {0, 0}) + winding_number(b, {0, 0}) == doctest::Approx(1.0));
  CHECK(winding_number(loop.translated({5, 5}), {0, 0}) == 0.0);
  CHECK_THROWS_AS(winding_number(loop, {0.5, 0.5}), Error);
}

TEST_CASE("refinable winding resolves a curve sampled too coarsely") {
  // A circle traversed twice, sampled so that each chord subtends about π:
  // read naively the chords would cancel.
  const auto curve = [](double t) {
    return PlanePoint{std::cos(4.0 * std::numbers::pi * t), std::sin(4.0 * std::numbers::pi * t)};
  };
  const std::vector<double> t{0.0, 0.22, 0.5, 0.78, 1.0};
  std::vector<PlanePoint> v;
  for (double s : t) v.push_back(curve(s));
  const PlanePath path(v, t, curve);
  CHECK(winding_number(path, {0.0, 0.0}) == 2.0);
}

TEST_CASE("algebraic intersection") {
  std::vector<PlanePoint> circle;
  for (int i = 0; i < 32; ++i)
    circle.push_back({1.0 + 0.5 * std::cos(2 * std::numbers::pi * (i + 0.5) / 32),
                      0.5 * std::sin(2 * std::numbers::pi * (i + 0.5) / 32)});
  const PlanePath loop = PlanePath::loop(circle);
  const PlanePath ray({{1.0, 0.0}, {3.0, 0.0}});
  CHECK(algebraic_intersection(ray, loop) == 1);
  CHECK(algebraic_intersection(ray.reversed(), loop) == -1);
  CHECK(algebraic_intersection(loop, ray) == -1);
  const PlanePath chord({{-1.0, 0.01}, {3.0, 0.02}});
  CHECK(algebraic_intersection(chord, loop) == 0);

  // Two closed loops in the plane always meet algebraically zero times.
  const CounterRng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = spiral_loop(rng, 5000 * trial, {0, 0}, 1, 40);
    const auto b = spiral_loop(rng, 5000 * trial + 2500, {0.7, 0.2}, trial % 2 ? 2 : -1, 60);
    try {
      CHECK(algebraic_intersection(PlanePath(a), PlanePath(b)) == 0);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegenerateIncidence);
    }
  }
}
