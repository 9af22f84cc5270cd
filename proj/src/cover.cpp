#include "tact/cover.hpp"

#include <algorithm>
#include <string>

#include "tact/error.hpp"

namespace tact {

Torus::Torus(double L) : L_(L) {
  if (!(L > 0.0) || !std::isfinite(L)) fail(ErrorKind::ConfigError, "torus modulus must be positive");
}

TorusPoint Torus::reduce(double x, double y) const noexcept {
  auto r = [this](double v) {
    double w = v - L_ * std::floor(v / L_);
    return w >= L_ ? 0.0 : w;
  };
  return {r(x), r(y)};
}

PlanePoint Torus::lift_near(TorusPoint z, PlanePoint ref) const noexcept {
  const double kx = std::floor((ref.x - z.x) / L_ + 0.5);
  const double ky = std::floor((ref.y - z.y) / L_ + 0.5);
  return {z.x + kx * L_, z.y + ky * L_};
}

DeckElement Torus::deck_between(PlanePoint from, PlanePoint to) const noexcept {
  return {static_cast<long>(std::lround((to.x - from.x) / L_)),
          static_cast<long>(std::lround((to.y - from.y) / L_))};
}

PlanePoint Torus::minimal_image(PlanePoint d) const noexcept {
  return {d.x - L_ * std::floor(d.x / L_ + 0.5), d.y - L_ * std::floor(d.y / L_ + 0.5)};
}

double Torus::distance(TorusPoint a, TorusPoint b) const noexcept {
  return norm(minimal_image({a.x - b.x, a.y - b.y}));
}

namespace {

void validate(const std::vector<PlanePoint>& v) {
  if (v.size() < 2) fail(ErrorKind::ConfigError, "path needs at least 2 vertices");
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] == v[i - 1])
      fail(ErrorKind::ConfigError, "path has repeated consecutive vertex at index " + std::to_string(i));
}

} // namespace

PlanePath::PlanePath(std::vector<PlanePoint> vertices) : v_(std::move(vertices)) { validate(v_); }

PlanePath::PlanePath(std::vector<PlanePoint> vertices, std::vector<double> times, Curve curve)
    : v_(std::move(vertices)), t_(std::move(times)), curve_(std::move(curve)) {
  validate(v_);
  if (t_.size() != v_.size()) fail(ErrorKind::ConfigError, "path times and vertices differ in length");
  for (std::size_t i = 1; i < t_.size(); ++i)
    if (!(t_[i] > t_[i - 1])) fail(ErrorKind::ConfigError, "path times must increase");
}

PlanePath PlanePath::loop(std::vector<PlanePoint> vertices) {
  if (!vertices.empty() && !(vertices.front() == vertices.back())) vertices.push_back(vertices.front());
  return PlanePath(std::move(vertices));
}

PlanePath PlanePath::translated(PlanePoint d) const {
  std::vector<PlanePoint> v(v_);
  for (auto& p : v) p = p + d;
  if (!curve_) return PlanePath(std::move(v));
  return PlanePath(std::move(v), t_, [c = curve_, d](double t) { return c(t) + d; });
}

PlanePath PlanePath::reversed() const {
  std::vector<PlanePoint> v(v_.rbegin(), v_.rend());
  if (!curve_) return PlanePath(std::move(v));
  const double t0 = t_.front(), t1 = t_.back();
  std::vector<double> t(t_.size());
  for (std::size_t i = 0; i < t_.size(); ++i) t[i] = t0 + t1 - t_[t_.size() - 1 - i];
  return PlanePath(std::move(v), std::move(t), [c = curve_, t0, t1](double s) { return c(t0 + t1 - s); });
}

PlanePath PlanePath::concatenated(const PlanePath& next) const {
  if (!(v_.back() == next.v_.front())) fail(ErrorKind::ConfigError, "concatenated paths do not meet");
  std::vector<PlanePoint> v(v_);
  v.insert(v.end(), next.v_.begin() + 1, next.v_.end());
  if (!curve_ || !next.curve_) return PlanePath(std::move(v));
  // Second curve re-timed to start where the first ends.
  const double split = t_.back();
  const double shift = split - next.t_.front();
  std::vector<double> t(t_);
  for (std::size_t i = 1; i < next.t_.size(); ++i) t.push_back(next.t_[i] + shift);
  return PlanePath(std::move(v), std::move(t), [a = curve_, b = next.curve_, split, shift](double s) {
    return s <= split ? a(s) : b(s - shift);
  });
}

namespace {

double segment_distance(PlanePoint p, PlanePoint q, PlanePoint w) {
  const PlanePoint d = q - p;
  const double len2 = norm2(d);
  double s = len2 > 0.0 ? dot(w - p, d) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return norm(p + s * d - w);
}

double angle(PlanePoint p, PlanePoint q, PlanePoint w) {
  const PlanePoint a = p - w, b = q - w;
  return std::atan2(cross(a, b), dot(a, b));
}

struct Winder {
  const PlanePath& path;
  PlanePoint w;
  const ToleranceConfig& tol;

  double segment(double t0, double t1, PlanePoint p, PlanePoint q, int depth) const {
    const double a = angle(p, q, w);
    if (std::abs(a) < tol.max_angle) {
      if (segment_distance(p, q, w) <= tol.geom)
        fail(ErrorKind::ClearanceViolation, "path passes within clearance of winding centre");
      return a;
    }
    if (depth >= tol.max_depth) fail(ErrorKind::RefinementExhausted, "winding refinement depth cap reached");
    const double tm = 0.5 * (t0 + t1);
    const PlanePoint m = path.at(tm);
    if (norm(m - w) <= tol.geom) fail(ErrorKind::ClearanceViolation, "path passes within clearance of winding centre");
    return segment(t0, tm, p, m, depth + 1) + segment(tm, t1, m, q, depth + 1);
  }
};

} // namespace

double winding_number(const PlanePath& path, PlanePoint w, const ToleranceConfig& tol) {
  const auto& v = path.vertices();
  const Winder winder{path, w, tol};
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (path.refinable()) {
      total += winder.segment(path.times()[i], path.times()[i + 1], v[i], v[i + 1], 0);
    } else {
      // A straight segment subtends less than π unless it meets w.
      if (segment_distance(v[i], v[i + 1], w) <= tol.geom)
        fail(ErrorKind::ClearanceViolation, "path passes within clearance of winding centre");
      total += angle(v[i], v[i + 1], w);
    }
  }
  const double turns = total / (2.0 * std::numbers::pi);
  if (path.closed()) {
    const double r = std::round(turns);
    if (std::abs(turns - r) > tol.integer_tol)
      fail(ErrorKind::RefinementExhausted, "closed path winding is not an integer");
    return r;
  }
  return turns;
}

int crossing_sign(PlanePoint p0, PlanePoint p1, PlanePoint q0, PlanePoint q1) {
  if (std::max(p0.x, p1.x) < std::min(q0.x, q1.x) || std::max(q0.x, q1.x) < std::min(p0.x, p1.x) ||
      std::max(p0.y, p1.y) < std::min(q0.y, q1.y) || std::max(q0.y, q1.y) < std::min(p0.y, p1.y))
    return 0;
  const double s0 = orient(p0, p1, q0), s1 = orient(p0, p1, q1);
  if ((s0 > 0.0 && s1 > 0.0) || (s0 < 0.0 && s1 < 0.0)) return 0;
  const double u0 = orient(q0, q1, p0), u1 = orient(q0, q1, p1);
  if ((u0 > 0.0 && u1 > 0.0) || (u0 < 0.0 && u1 < 0.0)) return 0;
  if (s0 == 0.0 || s1 == 0.0 || u0 == 0.0 || u1 == 0.0)
    fail(ErrorKind::DegenerateIncidence, "segments touch");
  return s0 < 0.0 ? 1 : -1;
}

long algebraic_intersection(const PlanePath& a, const PlanePath& b) {
  const auto& va = a.vertices();
  const auto& vb = b.vertices();
  long total = 0;
  for (std::size_t i = 0; i + 1 < va.size(); ++i)
    for (std::size_t j = 0; j + 1 < vb.size(); ++j) total += crossing_sign(va[i], va[i + 1], vb[j], vb[j + 1]);
  return total;
}

} // namespace tact
