#pragma once

// Refining angle sweep shared by the winding consumers. Not part of the
// public surface.

#include <cmath>

#include "tact/cover.hpp"
#include "tact/error.hpp"

namespace tact::detail {

inline double subtended(PlanePoint p, PlanePoint q, PlanePoint w) {
  const PlanePoint a = p - w, b = q - w;
  return std::atan2(cross(a, b), dot(a, b));
}

// Angle swept around w by curve(t) on [t0, t1], with p = curve(t0) and
// q = curve(t1) supplied; bisects until each step is below tol.max_angle.
template <class Curve>
double sweep(const Curve& curve, double t0, double t1, PlanePoint p, PlanePoint q, PlanePoint w,
             const ToleranceConfig& tol, int depth = 0) {
  const double a = subtended(p, q, w);
  if (std::abs(a) < tol.max_angle) return a;
  if (depth >= tol.max_depth) fail(ErrorKind::RefinementExhausted, "angle refinement depth cap reached");
  const double tm = 0.5 * (t0 + t1);
  const PlanePoint m = curve(tm);
  if (norm(m - w) <= tol.geom) fail(ErrorKind::ClearanceViolation, "curve passes within clearance");
  return sweep(curve, t0, tm, p, m, w, tol, depth + 1) + sweep(curve, tm, t1, m, q, w, tol, depth + 1);
}

} // namespace tact::detail
