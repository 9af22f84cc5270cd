#include "tact/isotopy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tact/error.hpp"

namespace tact {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

PlanePoint rotate(PlanePoint d, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * d.x - s * d.y, s * d.x + c * d.y};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}
} // namespace

std::string to_string(Smoothness s) {
  switch (s) {
  case Smoothness::Smooth: return "smooth";
  case Smoothness::Continuous: return "continuous";
  case Smoothness::Discontinuous: return "discontinuous";
  }
  return "unknown";
}

double RadialProfile::operator()(double r) const noexcept {
  const double u = r / radius;
  switch (shape) {
  case Shape::Linear: return u < 1.0 ? u : 0.0;
  case Shape::Plateau:
    if (u <= 0.5) return 1.0;
    return u <= 1.0 ? 2.0 * (1.0 - u) : 0.0;
  }
  return 0.0;
}

double RadialProfile::moment(double r) const noexcept {
  const double u = std::min(r / radius, 1.0);
  double m = 0.0;
  switch (shape) {
  case Shape::Linear: m = u * u * u / 3.0; break;
  case Shape::Plateau:
    m = u <= 0.5 ? 0.5 * u * u : u * u - 2.0 * u * u * u / 3.0 - 1.0 / 24.0;
    break;
  }
  return radius * radius * m;
}

std::string RadialProfile::name() const { return shape == Shape::Linear ? "linear" : "plateau"; }

Isotopy::Isotopy(Torus torus, std::shared_ptr<const IsotopyModel> model, std::string name, Smoothness smoothness)
    : torus_(torus), model_(std::move(model)), name_(std::move(name)), smoothness_(smoothness) {}

PlanePoint Isotopy::time_one_inverse(PlanePoint p) const {
  if (auto q = model_->inverse_one(p)) return *q;
  return newton_inverse(*this, p);
}

PlanePoint newton_inverse(const Isotopy& I, PlanePoint y, double tol) {
  // Initial guess: undo the displacement seen at y.
  PlanePoint x = y - (I.time_one(y) - y);
  PlanePoint r = I.time_one(x) - y;
  double rn = norm(r);
  for (int it = 0; it < 80 && rn > tol; ++it) {
    const double h = 1e-6 * std::max(1.0, norm(x));
    const PlanePoint ex{h, 0.0}, ey{0.0, h};
    const PlanePoint jx = (1.0 / (2.0 * h)) * (I.time_one(x + ex) - I.time_one(x - ex));
    const PlanePoint jy = (1.0 / (2.0 * h)) * (I.time_one(x + ey) - I.time_one(x - ey));
    const double det = jx.x * jy.y - jy.x * jx.y;
    if (!(std::abs(det) > 1e-14)) break;
    const PlanePoint step{(jy.y * r.x - jy.x * r.y) / det, (-jx.y * r.x + jx.x * r.y) / det};
    // Damped: halve until the residual decreases.
    double lam = 1.0;
    PlanePoint xn = x - step;
    PlanePoint rnew = I.time_one(xn) - y;
    while (norm(rnew) >= rn && lam > 1e-6) {
      lam *= 0.5;
      xn = x - lam * step;
      rnew = I.time_one(xn) - y;
    }
    if (norm(rnew) >= rn) break;
    x = xn;
    r = rnew;
    rn = norm(r);
  }
  if (!(rn <= tol)) fail(ErrorKind::InversionDiverged, "time-one inverse did not converge (residual " + fmt(rn) + ")");
  return x;
}

namespace {

class TwistModel final : public IsotopyModel {
public:
  TwistModel(Torus torus, TorusPoint c, RadialProfile prof) : torus_(torus), c_(c), prof_(prof) {}

  PlanePoint turn(double t, PlanePoint p) const {
    const PlanePoint cc = torus_.lift_near(c_, p);
    const PlanePoint d = p - cc;
    const double r = norm(d);
    if (r >= prof_.radius) return p;
    const double beta = prof_(r);
    if (beta == 0.0 || t == 0.0) return p;
    return cc + rotate(d, kTwoPi * beta * t);
  }

  PlanePoint at(double t, PlanePoint p) const override { return turn(t, p); }
  std::optional<PlanePoint> inverse_one(PlanePoint p) const override { return turn(-1.0, p); }

private:
  Torus torus_;
  TorusPoint c_;
  RadialProfile prof_;
};

class ShearModel final : public IsotopyModel {
public:
  explicit ShearModel(double L) : L_(L), a_(L / 10.0) {}

  PlanePoint at(double t, PlanePoint p) const override {
    const double w = kTwoPi * p.y / L_;
    return {p.x + t * a_ * std::cos(w), p.y + t * a_ * std::sin(w)};
  }

  std::optional<PlanePoint> inverse_one(PlanePoint q) const override {
    // y + a sin(2πy/L) is strictly increasing since 2πa/L < 1.
    double y = q.y;
    for (int i = 0; i < 60; ++i) {
      const double w = kTwoPi * y / L_;
      const double g = y + a_ * std::sin(w) - q.y;
      const double dy = g / (1.0 + a_ * kTwoPi / L_ * std::cos(w));
      y -= dy;
      if (std::abs(dy) <= 1e-16 * std::max(1.0, std::abs(y))) break;
    }
    return PlanePoint{q.x - a_ * std::cos(kTwoPi * y / L_), y};
  }

private:
  double L_, a_;
};

class RigidModel final : public IsotopyModel {
public:
  explicit RigidModel(PlanePoint v) : v_(v) {}
  PlanePoint at(double t, PlanePoint p) const override {
    if (t == 0.0) return p;
    return t == 1.0 ? p + v_ : p + t * v_;
  }
  std::optional<PlanePoint> inverse_one(PlanePoint p) const override { return p - v_; }

private:
  PlanePoint v_;
};

class HShearModel final : public IsotopyModel {
public:
  HShearModel(double L, double a) : L_(L), a_(a) {}
  PlanePoint at(double t, PlanePoint p) const override {
    return {p.x + t * a_ * std::sin(kTwoPi * p.y / L_), p.y};
  }
  std::optional<PlanePoint> inverse_one(PlanePoint p) const override {
    return PlanePoint{p.x - a_ * std::sin(kTwoPi * p.y / L_), p.y};
  }

private:
  double L_, a_;
};

class ComposeModel final : public IsotopyModel {
public:
  ComposeModel(Isotopy a, Isotopy b) : a_(std::move(a)), b_(std::move(b)) {}
  PlanePoint at(double t, PlanePoint p) const override {
    if (t <= 0.5) return a_.lifted(2.0 * t, p);
    return b_.lifted(2.0 * t - 1.0, a_.time_one(p));
  }
  PlanePoint one(PlanePoint p) const override { return b_.time_one(a_.time_one(p)); }
  std::optional<PlanePoint> inverse_one(PlanePoint p) const override {
    return a_.time_one_inverse(b_.time_one_inverse(p));
  }
  int pieces() const override { return 2 * std::max(a_.pieces(), b_.pieces()); }

private:
  Isotopy a_, b_;
};

class InverseModel final : public IsotopyModel {
public:
  explicit InverseModel(Isotopy a) : a_(std::move(a)) {}
  PlanePoint at(double t, PlanePoint p) const override {
    if (t == 0.0) return p;
    const PlanePoint q = a_.time_one_inverse(p);
    return t == 1.0 ? q : a_.lifted(1.0 - t, q);
  }
  PlanePoint one(PlanePoint p) const override { return a_.time_one_inverse(p); }
  std::optional<PlanePoint> inverse_one(PlanePoint p) const override { return a_.time_one(p); }
  int pieces() const override { return a_.pieces(); }

private:
  Isotopy a_;
};

class PowerModel final : public IsotopyModel {
public:
  PowerModel(Isotopy a, int q) : a_(std::move(a)), q_(q) {}
  PlanePoint at(double t, PlanePoint p) const override {
    const double s = t * q_;
    const int k = std::clamp(static_cast<int>(std::floor(s)), 0, q_ - 1);
    for (int i = 0; i < k; ++i) p = a_.time_one(p);
    return a_.lifted(s - k, p);
  }
  PlanePoint one(PlanePoint p) const override {
    for (int i = 0; i < q_; ++i) p = a_.time_one(p);
    return p;
  }
  std::optional<PlanePoint> inverse_one(PlanePoint p) const override {
    for (int i = 0; i < q_; ++i) p = a_.time_one_inverse(p);
    return p;
  }
  int pieces() const override { return q_ * a_.pieces(); }

private:
  Isotopy a_;
  int q_;
};

class ConjugateModel final : public IsotopyModel {
public:
  ConjugateModel(Isotopy a, Isotopy h) : a_(std::move(a)), h_(std::move(h)) {}
  PlanePoint at(double t, PlanePoint p) const override {
    if (t == 0.0) return p;
    return h_.time_one(a_.lifted(t, h_.time_one_inverse(p)));
  }
  PlanePoint one(PlanePoint p) const override { return h_.time_one(a_.time_one(h_.time_one_inverse(p))); }
  std::optional<PlanePoint> inverse_one(PlanePoint p) const override {
    return h_.time_one(a_.time_one_inverse(h_.time_one_inverse(p)));
  }
  int pieces() const override { return a_.pieces(); }

private:
  Isotopy a_, h_;
};

Smoothness worst(Smoothness a, Smoothness b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

} // namespace

Isotopy make_twist(const Torus& torus, TorusPoint center, RadialProfile profile) {
  if (!(profile.radius > 0.0)) fail(ErrorKind::ConfigError, "twist support radius must be positive");
  if (profile.radius >= 0.5 * torus.modulus())
    fail(ErrorKind::ConfigError, "twist support radius " + fmt(profile.radius) +
                                     " does not embed in a torus of modulus " + fmt(torus.modulus()));
  center = torus.reduce(center.x, center.y);
  // The linear profile jumps from 1 to 0 on the boundary circle.
  const Smoothness s =
      profile.shape == RadialProfile::Shape::Linear ? Smoothness::Discontinuous : Smoothness::Continuous;
  return Isotopy(torus, std::make_shared<TwistModel>(torus, center, profile),
                 "twist(" + profile.name() + ", c=(" + fmt(center.x) + "," + fmt(center.y) + "), R=" +
                     fmt(profile.radius) + ")",
                 s);
}

Isotopy make_shear(const Torus& torus) {
  return Isotopy(torus, std::make_shared<ShearModel>(torus.modulus()), "shear", Smoothness::Smooth);
}

Isotopy make_rigid_rotation(const Torus& torus, PlanePoint v) {
  return Isotopy(torus, std::make_shared<RigidModel>(v), "rigid(" + fmt(v.x) + "," + fmt(v.y) + ")",
                 Smoothness::Smooth);
}

Isotopy make_horizontal_shear(const Torus& torus, double amplitude) {
  return Isotopy(torus, std::make_shared<HShearModel>(torus.modulus(), amplitude), "hshear(" + fmt(amplitude) + ")",
                 Smoothness::Smooth);
}

Isotopy compose(const Isotopy& first, const Isotopy& second) {
  if (first.torus().modulus() != second.torus().modulus())
    fail(ErrorKind::ConfigError, "compose: isotopies live on different tori");
  return Isotopy(first.torus(), std::make_shared<ComposeModel>(first, second),
                 "compose(" + first.name() + ", " + second.name() + ")",
                 worst(first.smoothness(), second.smoothness()));
}

Isotopy inverse(const Isotopy& I) {
  return Isotopy(I.torus(), std::make_shared<InverseModel>(I), "inverse(" + I.name() + ")", I.smoothness());
}

Isotopy power(const Isotopy& I, int q) {
  if (q < 1) fail(ErrorKind::ConfigError, "power: exponent must be positive");
  if (q == 1) return I;
  return Isotopy(I.torus(), std::make_shared<PowerModel>(I, q), "power(" + I.name() + ", " + std::to_string(q) + ")",
                 I.smoothness());
}

Isotopy conjugate(const Isotopy& I, const Isotopy& H) {
  return Isotopy(I.torus(), std::make_shared<ConjugateModel>(I, H), "conjugate(" + I.name() + ", " + H.name() + ")",
                 worst(I.smoothness(), H.smoothness()));
}

void require_fixed(const Isotopy& I, PlanePoint p, double tol) {
  const double r = norm(I.time_one(p) - p);
  if (!(r < tol))
    fail(ErrorKind::NotFixed, "lift (" + fmt(p.x) + "," + fmt(p.y) + ") is not fixed by the lifted map (residual " +
                                  fmt(r) + ")");
}

PlaneIsotopy::PlaneIsotopy(Isotopy base, PlanePoint a, PlanePoint b, ToleranceConfig tol)
    : base_(std::move(base)), a_(a), b_(b), tol_(tol) {}

std::complex<double> PlaneIsotopy::multiplier(double t) const {
  if (t == 0.0 || t == 1.0) return {1.0, 0.0};
  const PlanePoint den = base_.lifted(t, b_) - base_.lifted(t, a_);
  if (norm(den) < tol_.geom) fail(ErrorKind::DegenerateDenominator, "normalization denominator vanishes");
  const PlanePoint num = b_ - a_;
  return std::complex<double>(num.x, num.y) / std::complex<double>(den.x, den.y);
}

PlanePoint PlaneIsotopy::at(double t, PlanePoint p) const {
  if (t == 0.0) return p;
  if (t == 1.0) return base_.time_one(p);
  const std::complex<double> lam = multiplier(t);
  const PlanePoint d = base_.lifted(t, p) - base_.lifted(t, a_);
  const std::complex<double> w = lam * std::complex<double>(d.x, d.y);
  return {w.real() + a_.x, w.imag() + a_.y};
}

PlaneIsotopy normalize_fixing_two(const Isotopy& I, PlanePoint a, PlanePoint b, const ToleranceConfig& tol) {
  if (norm(b - a) < tol.geom) fail(ErrorKind::ConfigError, "normalization needs two distinct points");
  require_fixed(I, a);
  require_fixed(I, b);
  return PlaneIsotopy(I, a, b, tol);
}

Trajectory trajectory(const Isotopy& I, PlanePoint z, int steps, double geom) {
  if (steps < 2) fail(ErrorKind::ConfigError, "trajectory needs at least 2 steps");
  Trajectory tr;
  tr.samples.reserve(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    tr.samples.push_back(i == steps ? I.time_one(z) : I.lifted(t, z));
  }
  double spread = 0.0;
  for (const auto& p : tr.samples) spread = std::max(spread, norm(p - z));
  tr.degenerate = spread < geom;
  if (tr.degenerate) return tr;

  std::vector<PlanePoint> v;
  std::vector<double> ts;
  for (int i = 0; i <= steps; ++i) {
    if (!v.empty() && v.back() == tr.samples[static_cast<std::size_t>(i)]) continue;
    v.push_back(tr.samples[static_cast<std::size_t>(i)]);
    ts.push_back(static_cast<double>(i) / steps);
  }
  if (v.size() < 2) {
    tr.degenerate = true;
    return tr;
  }
  tr.path.emplace(std::move(v), std::move(ts), [I, z](double t) { return I.lifted(t, z); });
  return tr;
}

} // namespace tact
