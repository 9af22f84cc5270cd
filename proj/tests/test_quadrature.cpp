#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tact/error.hpp"
#include "tact/measure.hpp"
#include "tact/quadrature.hpp"

using namespace tact;

namespace {

const Torus T(4.0);
constexpr double kTau = 2.0 * std::numbers::pi;

bool smooth(TorusPoint z, std::span<double> out) {
  out[0] = std::pow(std::sin(kTau * z.x / 4.0), 2) + std::cos(kTau * z.y / 4.0);
  out[1] = z.x * z.y;
  return true;
}

bool indicator(TorusPoint z, std::span<double> out) {
  out[0] = T.distance(z, {2.0, 2.0}) < 1.0 ? 1.0 : 0.0;
  return true;
}

Density unit() {
  return [](TorusPoint) { return 1.0; };
}

} // namespace

TEST_CASE("parallel sampling is bitwise identical to the serial kernel") {
  const CellField ref = sample_cells_serial(T, 37, 2, smooth);
  for (int threads : {1, 2, 3, 4}) {
    const CellField par = sample_cells_parallel(T, 37, 2, smooth, threads);
    CHECK(par.values == ref.values);
    CHECK(par.ok == ref.ok);
  }
  CHECK(cell_center(T, 4, 0) == TorusPoint{0.5, 0.5});
  CHECK(cell_center(T, 4, 5) == TorusPoint{1.5, 1.5});
}

TEST_CASE("cell-centre rule on smooth periodic and polynomial integrands") {
  QuadratureConfig cfg;
  cfg.grid_n = 32;
  // xy is not periodic; keep its seam from being flagged as a jump.
  cfg.jump_threshold = 1e3;
  const QuadratureResult r = integrate_grid(T, unit(), 2, smooth, cfg);
  CHECK(r.jump_cells == 0);
  // sin² averages to 1/2 over the period and cos to 0.
  CHECK(r.value[0] == doctest::Approx(8.0).epsilon(1e-13));
  // ∫∫ xy over [0,4]² is 64; the midpoint rule is exact for bilinear terms.
  CHECK(r.value[1] == doctest::Approx(64.0).epsilon(1e-13));
  CHECK(r.error[0] < 1e-9);
  REQUIRE(r.coarse.size() == 2);
}

TEST_CASE("error bar covers the area of a disk") {
  for (int n : {32, 64, 128}) {
    QuadratureConfig cfg;
    cfg.grid_n = n;
    const QuadratureResult r = integrate_grid(T, unit(), 1, indicator, cfg);
    CAPTURE(n);
    CHECK(r.jump_cells > 0);
    CHECK(std::abs(r.value[0] - std::numbers::pi) <= r.error[0]);
    CHECK(r.error[0] < 40.0 / n);
  }
}

TEST_CASE("disk measure density") {
  const Measure mu = Measure::disk_lebesgue(T, {0.0, 0.0}, 1.0);
  QuadratureConfig cfg;
  cfg.grid_n = 128;
  const auto one = [](TorusPoint, std::span<double> out) {
    out[0] = 1.0;
    return true;
  };
  const QuadratureResult r = integrate_grid(T, [&](TorusPoint z) { return mu.density(z); }, 1, one, cfg);
  CHECK(std::abs(r.value[0] - std::numbers::pi) <= r.error[0] + 1e-12);
}

TEST_CASE("unconverged cells enlarge the error or abort") {
  const auto hole = [](double radius) {
    return [radius](TorusPoint z, std::span<double> out) {
      out[0] = 1.0;
      return T.distance(z, {1.0, 1.0}) >= radius;
    };
  };
  QuadratureConfig cfg;
  cfg.grid_n = 64;
  cfg.richardson = false;
  const QuadratureResult small = integrate_grid(T, unit(), 1, hole(0.1), cfg);
  CHECK(small.unconverged_cells > 0);
  CHECK(small.error[0] >= small.unconverged_mass);
  CHECK_THROWS_AS(integrate_grid(T, unit(), 1, hole(1.0), cfg), Error);

  cfg.grid_n = 3;
  cfg.richardson = true;
  CHECK_THROWS_AS(integrate_grid(T, unit(), 1, smooth, cfg), Error);
}

TEST_CASE("integration results do not depend on the thread count") {
  QuadratureConfig cfg;
  cfg.grid_n = 48;
  cfg.parallel = false;
  const QuadratureResult ref = integrate_grid(T, unit(), 1, indicator, cfg);
  cfg.parallel = true;
  for (int threads : {1, 2, 4}) {
    cfg.threads = threads;
    const QuadratureResult r = integrate_grid(T, unit(), 1, indicator, cfg);
    CHECK(r.value == ref.value);
    CHECK(r.error == ref.error);
  }
}
