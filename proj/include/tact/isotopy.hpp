#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tact/cover.hpp"

namespace tact {

enum class Smoothness { Smooth = 0, Continuous = 1, Discontinuous = 2 };

std::string to_string(Smoothness s);

// Radial rotation profile β for disk twists, scaled to a support radius R:
// the effective profile is β(r / R).
struct RadialProfile {
  enum class Shape { Linear, Plateau };

  Shape shape = Shape::Linear;
  double radius = 1.0;

  // Linear: β(u) = u on u < 1 (the unit circle itself is static).
  // Plateau: 1 on u ≤ 1/2, 2(1 - u) on (1/2, 1], 0 beyond.
  double operator()(double r) const noexcept;
  // ∫_0^r s β(s) ds.
  double moment(double r) const noexcept;
  std::string name() const;
};

// Lifted evaluator of an identity isotopy. Implementations must be
// deck-equivariant and equal the identity at t = 0.
class IsotopyModel {
public:
  virtual ~IsotopyModel() = default;
  virtual PlanePoint at(double t, PlanePoint p) const = 0;
  virtual PlanePoint one(PlanePoint p) const { return at(1.0, p); }
  virtual std::optional<PlanePoint> inverse_one(PlanePoint) const { return std::nullopt; }
  // Number of unit-speed pieces the time interval is cut into; used to
  // choose sampling density.
  virtual int pieces() const { return 1; }
};

class Isotopy {
public:
  Isotopy(Torus torus, std::shared_ptr<const IsotopyModel> model, std::string name, Smoothness smoothness);

  const Torus& torus() const noexcept { return torus_; }
  const std::string& name() const noexcept { return name_; }
  Smoothness smoothness() const noexcept { return smoothness_; }
  int pieces() const { return model_->pieces(); }
  const IsotopyModel& model() const noexcept { return *model_; }

  PlanePoint lifted(double t, PlanePoint p) const { return model_->at(t, p); }
  PlanePoint time_one(PlanePoint p) const { return model_->one(p); }
  PlanePoint time_one_inverse(PlanePoint p) const;

  TorusPoint eval(double t, TorusPoint z) const { return torus_.project(lifted(t, torus_.base_lift(z))); }
  TorusPoint map(TorusPoint z) const { return torus_.project(time_one(torus_.base_lift(z))); }
  TorusPoint map_inverse(TorusPoint z) const { return torus_.project(time_one_inverse(torus_.base_lift(z))); }

private:
  Torus torus_;
  std::shared_ptr<const IsotopyModel> model_;
  std::string name_;
  Smoothness smoothness_;
};

Isotopy make_twist(const Torus& torus, TorusPoint center, RadialProfile profile = {});
// (x, y) -> (x + (tL/10) cos(2πy/L), y + (tL/10) sin(2πy/L)).
Isotopy make_shear(const Torus& torus);
Isotopy make_rigid_rotation(const Torus& torus, PlanePoint v);
// Area-preserving horizontal shear (x + t·a·sin(2πy/L), y); used as a
// conjugacy.
Isotopy make_horizontal_shear(const Torus& torus, double amplitude);

// Runs I1 on [0, 1/2] and I2 after the time-one map of I1 on [1/2, 1].
Isotopy compose(const Isotopy& first, const Isotopy& second);
// (F_{1-t} ∘ F_1^{-1}).
Isotopy inverse(const Isotopy& I);
// Concatenation of I applied q times along the orbit.
Isotopy power(const Isotopy& I, int q);
// h ∘ F_t ∘ h^{-1}, with h the time-one map of H.
Isotopy conjugate(const Isotopy& I, const Isotopy& H);

// Newton solve of F_1(x) = y with a finite-difference Jacobian; throws
// InversionDiverged if the residual does not reach tol.
PlanePoint newton_inverse(const Isotopy& I, PlanePoint y, double tol = 1e-12);

// Plane isotopy fixing a and b for all t:
//   λ_t (F_t(p) - F_t(a)) + a,   λ_t = (b - a) / (F_t(b) - F_t(a)).
// At t = 0 and t = 1 the multiplier is exactly 1.
class PlaneIsotopy {
public:
  PlaneIsotopy(Isotopy base, PlanePoint a, PlanePoint b, ToleranceConfig tol = {});

  PlanePoint at(double t, PlanePoint p) const;
  std::complex<double> multiplier(double t) const;
  // F_t(a), the common translation removed by the normalization.
  PlanePoint anchor(double t) const { return base_.lifted(t, a_); }

  const Isotopy& base() const noexcept { return base_; }
  PlanePoint a() const noexcept { return a_; }
  PlanePoint b() const noexcept { return b_; }

private:
  Isotopy base_;
  PlanePoint a_, b_;
  ToleranceConfig tol_;
};

PlaneIsotopy normalize_fixing_two(const Isotopy& I, PlanePoint a, PlanePoint b, const ToleranceConfig& tol = {});

// Throws NotFixed unless |F_1(p) - p| < tol.
void require_fixed(const Isotopy& I, PlanePoint p, double tol = 1e-9);

struct Trajectory {
  std::vector<PlanePoint> samples;   // F_t(z) at uniform times
  bool degenerate = false;           // constant path, no polyline exists
  std::optional<PlanePath> path;     // refinable t -> F_t(z) when not degenerate
};

Trajectory trajectory(const Isotopy& I, PlanePoint z, int steps, double geom = 1e-9);

} // namespace tact
