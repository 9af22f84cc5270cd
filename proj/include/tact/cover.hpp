#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace tact {

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;

  friend constexpr PlanePoint operator+(PlanePoint a, PlanePoint b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr PlanePoint operator-(PlanePoint a, PlanePoint b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr PlanePoint operator-(PlanePoint a) { return {-a.x, -a.y}; }
  friend constexpr PlanePoint operator*(double s, PlanePoint a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(PlanePoint, PlanePoint) = default;
};

constexpr double dot(PlanePoint a, PlanePoint b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(PlanePoint a, PlanePoint b) { return a.x * b.y - a.y * b.x; }
constexpr double norm2(PlanePoint a) { return dot(a, a); }
inline double norm(PlanePoint a) { return std::sqrt(a.x * a.x + a.y * a.y); }

// Coordinates are always reduced to [0, L).
struct TorusPoint {
  double x = 0.0;
  double y = 0.0;
  friend constexpr bool operator==(TorusPoint, TorusPoint) = default;
};

struct DeckElement {
  long m = 0;
  long n = 0;

  friend constexpr DeckElement operator+(DeckElement a, DeckElement b) { return {a.m + b.m, a.n + b.n}; }
  friend constexpr DeckElement operator-(DeckElement a, DeckElement b) { return {a.m - b.m, a.n - b.n}; }
  friend constexpr DeckElement operator-(DeckElement a) { return {-a.m, -a.n}; }
  friend constexpr bool operator==(DeckElement, DeckElement) = default;
};

struct ToleranceConfig {
  double geom = 1e-9;                         // clearance epsilon
  int max_depth = 24;                         // bisection cap per segment
  double max_angle = std::numbers::pi / 2.0;  // per-step angle bound
  double integer_tol = 1e-9;
};

class Torus {
public:
  explicit Torus(double L = 4.0);

  double modulus() const noexcept { return L_; }

  TorusPoint reduce(double x, double y) const noexcept;
  TorusPoint project(PlanePoint p) const noexcept { return reduce(p.x, p.y); }
  PlanePoint base_lift(TorusPoint z) const noexcept { return {z.x, z.y}; }

  // Lift of z nearest to ref. On an exact tie the larger coordinate wins,
  // x and y independently, e.g. z=(2,0), ref=(0,0), L=4 gives (2,0).
  PlanePoint lift_near(TorusPoint z, PlanePoint ref) const noexcept;

  PlanePoint apply(DeckElement a, PlanePoint p) const noexcept {
    return {p.x + static_cast<double>(a.m) * L_, p.y + static_cast<double>(a.n) * L_};
  }
  PlanePoint offset(DeckElement a) const noexcept { return apply(a, {}); }

  // Deck element carrying `from` onto the lift of project(to) nearest `to`.
  DeckElement deck_between(PlanePoint from, PlanePoint to) const noexcept;

  // Shortest representative of a displacement vector.
  PlanePoint minimal_image(PlanePoint d) const noexcept;
  double distance(TorusPoint a, TorusPoint b) const noexcept;

private:
  double L_;
};

// Oriented polyline. When built from a parametrized curve the path keeps
// the curve so that winding computations can refine between vertices.
class PlanePath {
public:
  using Curve = std::function<PlanePoint(double)>;

  explicit PlanePath(std::vector<PlanePoint> vertices);
  PlanePath(std::vector<PlanePoint> vertices, std::vector<double> times, Curve curve);

  // Appends the first vertex when needed so the result is closed.
  static PlanePath loop(std::vector<PlanePoint> vertices);

  const std::vector<PlanePoint>& vertices() const noexcept { return v_; }
  const std::vector<double>& times() const noexcept { return t_; }
  std::size_t size() const noexcept { return v_.size(); }
  bool closed() const noexcept { return v_.front() == v_.back(); }
  bool refinable() const noexcept { return static_cast<bool>(curve_); }
  PlanePoint at(double t) const { return curve_(t); }

  PlanePath translated(PlanePoint d) const;
  PlanePath reversed() const;
  // Requires back() == next.front().
  PlanePath concatenated(const PlanePath& next) const;

private:
  std::vector<PlanePoint> v_;
  std::vector<double> t_;
  Curve curve_;
};

// Total angle swept around w divided by 2π. Closed paths return an exact
// integer.
double winding_number(const PlanePath& path, PlanePoint w, const ToleranceConfig& tol = {});

// Orientation of c relative to the directed line a->b.
constexpr double orient(PlanePoint a, PlanePoint b, PlanePoint c) { return cross(b - a, c - a); }

// +1 when segment q0q1 crosses segment p0p1 from its right to its left,
// -1 for the opposite direction, 0 when disjoint. Any touching incidence
// throws DegenerateIncidence.
int crossing_sign(PlanePoint p0, PlanePoint p1, PlanePoint q0, PlanePoint q1);

// Signed count of crossings of b over a, under the crossing_sign rule.
long algebraic_intersection(const PlanePath& a, const PlanePath& b);

} // namespace tact
