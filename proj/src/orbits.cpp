#include "tact/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>

#include "tact/error.hpp"
#include "tact/random.hpp"
#include "tact/winding_detail.hpp"

namespace tact {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCosQuarter = 0.70710678118654752;

template <class F>
void for_shell(int s, F&& f) {
  if (s == 0) {
    f(DeckElement{0, 0});
    return;
  }
  for (int i = -s; i <= s; ++i) {
    f(DeckElement{i, -s});
    f(DeckElement{i, s});
  }
  for (int j = -s + 1; j <= s - 1; ++j) {
    f(DeckElement{-s, j});
    f(DeckElement{s, j});
  }
}

std::vector<double> grid_times(int S) {
  std::vector<double> u(static_cast<std::size_t>(S) + 1);
  for (int i = 0; i <= S; ++i) u[static_cast<std::size_t>(i)] = static_cast<double>(i) / S;
  u.back() = 1.0;
  return u;
}

void require_admissible(const Torus& T, const ReturnDisk& U, TorusPoint z, PlanePoint a, PlanePoint b) {
  check_disk(T, U);
  if (!in_disk(T, U, z)) fail(ErrorKind::ConfigError, "base point must lie in the return disk");
  if (T.distance(U.center, T.project(a)) <= U.radius || T.distance(U.center, T.project(b)) <= U.radius)
    fail(ErrorKind::ConfigError, "return disk must avoid the projections of the fixed lifts");
}

} // namespace

void check_disk(const Torus& T, const ReturnDisk& U) {
  if (!(U.radius > 0.0) || !(U.radius < 0.25 * T.modulus()))
    fail(ErrorKind::ConfigError, "return disk radius must lie in (0, L/4)");
  if (U.cap < 1) fail(ErrorKind::ConfigError, "return cap must be positive");
}

bool in_disk(const Torus& T, const ReturnDisk& U, TorusPoint z) { return T.distance(U.center, z) < U.radius; }

FirstReturn first_return(const Isotopy& I, const ReturnDisk& U, TorusPoint z) {
  const Torus& T = I.torus();
  check_disk(T, U);
  if (!in_disk(T, U, z)) fail(ErrorKind::ConfigError, "first_return: point must lie in the disk");
  PlanePoint p = T.base_lift(z);
  for (long n = 1; n <= U.cap; ++n) {
    p = I.time_one(p);
    const TorusPoint q = T.project(p);
    if (in_disk(T, U, q)) return {n, q};
    p = T.base_lift(q);
  }
  fail(ErrorKind::CapExceeded, "no return to the disk within the iteration cap");
}

ReturnOrbit return_orbit(const Isotopy& I, const ReturnDisk& U, TorusPoint z, int n) {
  ReturnOrbit o;
  o.base = z;
  long cum = 0;
  TorusPoint w = z;
  for (int j = 0; j < n; ++j) {
    const FirstReturn r = first_return(I, U, w);
    cum += r.tau;
    o.tau.push_back(r.tau);
    o.points.push_back(r.point);
    o.cumulative.push_back(cum);
    w = r.point;
  }
  return o;
}

Rational Rational::make(long num, long den) {
  if (den == 0) fail(ErrorKind::ConfigError, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long g = std::gcd(num < 0 ? -num : num, den);
  return {num / (g ? g : 1), den / (g ? g : 1)};
}

PairFrame::PairFrame(const Isotopy& I, PlanePoint a, PlanePoint b, const LinkingConfig& cfg)
    : I_(I), a_(a), b_(b), cfg_(cfg), N_(normalize_fixing_two(I, a, b, cfg.tol)),
      S_(std::max(4, cfg.samples_per_piece * I.pieces())), u_(grid_times(S_)),
      margin_(cfg.margin < 0.0 ? I.torus().modulus() : cfg.margin) {
  lam_.resize(u_.size());
  fa_.resize(u_.size());
  for (std::size_t i = 0; i < u_.size(); ++i) {
    lam_[i] = N_.multiplier(u_[i]);
    fa_[i] = i + 1 == u_.size() ? I.time_one(a) : I.lifted(u_[i], a);
    lam_min_ = std::min(lam_min_, std::abs(lam_[i]));
  }
  const int fine = 64 * I.pieces();
  for (int i = 1; i < fine; ++i) lam_min_ = std::min(lam_min_, std::abs(N_.multiplier(static_cast<double>(i) / fine)));
}

std::vector<PlanePoint> PairFrame::transversal(int attempt) const {
  if (attempt == 0) return {a_, b_};
  const CounterRng rng(cfg_.seed, 0x7a11);
  const double phi = kTwoPi * rng.uniform(static_cast<std::uint64_t>(attempt));
  const double mag = 1e-7 * I_.torus().modulus();
  const PlanePoint mid = 0.5 * (a_ + b_) + PlanePoint{mag * std::cos(phi), mag * std::sin(phi)};
  return {a_, mid, b_};
}

double PairFrame::reach(int attempt) const {
  return norm(b_ - a_) + (attempt == 0 ? 0.0 : 2e-7 * I_.torus().modulus());
}

void OrbitChunk::reset(PlanePoint start) {
  p.assign(1, start);
  F.clear();
}

void OrbitChunk::step(const Isotopy& I) {
  const PlanePoint pk = p.back();
  for (int i = 1; i < S; ++i) F.push_back(I.lifted(u[static_cast<std::size_t>(i)], pk));
  p.push_back(I.time_one(pk));
}

void OrbitChunk::close(const Torus& T) { target = p.front() + T.offset(T.deck_between(p.front(), p.back())); }

OrbitChunk make_chunk(const Isotopy& I, int samples_per_piece) {
  OrbitChunk c;
  c.S = std::max(4, samples_per_piece * I.pieces());
  c.u = grid_times(c.S);
  return c;
}

namespace {

class ChunkCounter {
public:
  ChunkCounter(const PairFrame& fr, const OrbitChunk& ch, int attempt)
      : fr_(fr), ch_(ch), N_(fr.normalized()), a_(fr.a()), b_(fr.b()), tv_(fr.transversal(attempt)),
        reach_(fr.reach(attempt)), tol_(fr.config().tol), S_(ch.S) {
    if (ch.S != fr.samples()) fail(ErrorKind::ConfigError, "chunk and frame sampling grids differ");
    g2_ = tol_.geom * tol_.geom;
    for (const auto& t : tv_) {
      tlo_ = {std::min(tlo_.x, t.x), std::min(tlo_.y, t.y)};
      thi_ = {std::max(thi_.x, t.x), std::max(thi_.y, t.y)};
    }
    // Bounding disk of the un-normalized relative cloud F_u(p) - F_u(a).
    double lx = INFINITY, ly = INFINITY, hx = -INFINITY, hy = -INFINITY;
    auto acc = [&](PlanePoint d) {
      lx = std::min(lx, d.x);
      hx = std::max(hx, d.x);
      ly = std::min(ly, d.y);
      hy = std::max(hy, d.y);
    };
    for_cloud(acc);
    c_ = {0.5 * (lx + hx), 0.5 * (ly + hy)};
    R_ = 0.0;
    for_cloud([&](PlanePoint d) { R_ = std::max(R_, norm(d - c_)); });
  }

  long total() {
    const Torus& T = fr_.isotopy().torus();
    const PlanePoint p0 = ch_.p.front();
    const DeckElement beta = T.deck_between(p0, T.lift_near(T.project(p0), a_));
    const double lmin = fr_.lambda_min();
    long sum = 0;
    for (int s = 0; s <= fr_.config().shell_cap; ++s) {
      bool near = false;
      for_shell(s, [&](DeckElement al) {
        const PlanePoint o = T.offset(beta + al);
        if (lmin * (norm(c_ + o) - R_) <= reach_ + fr_.margin()) {
          near = true;
          sum += lift(o);
        }
      });
      if (!near) {
        long extra = 0;
        for_shell(s, [&](DeckElement al) { extra += lift(T.offset(beta + al)); });
        if (extra != 0) fail(ErrorKind::TruncationUnverified, "verification shell changed the intersection sum");
        return sum;
      }
    }
    fail(ErrorKind::ShellCapExceeded, "intersection sum did not settle within the shell cap");
  }

private:
  template <class F>
  void for_cloud(F&& f) const {
    const long m = ch_.steps();
    for (long k = 0; k < m; ++k) {
      f(ch_.p[static_cast<std::size_t>(k)] - a_);
      for (int i = 1; i < S_; ++i)
        f(ch_.F[static_cast<std::size_t>(k * (S_ - 1) + i - 1)] - fr_.anchor(i));
    }
    f(ch_.p.back() - a_);
    f(ch_.target - a_);
  }

  bool clear(PlanePoint c, double R, PlanePoint o) const {
    return fr_.lambda_min() * (norm(c + o) - 2.0 * R) * kCosQuarter > reach_ + tol_.geom;
  }

  struct Vertex {
    PlanePoint p;
    double da, db;  // squared distances to a and b
  };

  Vertex vertex(PlanePoint p) const {
    const Vertex v{p, norm2(p - a_), norm2(p - b_)};
    if (v.da <= g2_ || v.db <= g2_) fail(ErrorKind::ClearanceViolation, "orbit passes through a fixed lift");
    return v;
  }

  long lift(PlanePoint o) const {
    if (clear(c_, R_, o)) return 0;
    const long m = ch_.steps();
    long sum = 0;
    Vertex prev = vertex(ch_.p.front() + o);
    for (long k = 0; k < m; ++k) {
      const PlanePoint pk = ch_.p[static_cast<std::size_t>(k)] + o;
      for (int i = 1; i <= S_; ++i) {
        PlanePoint cur;
        if (i == S_) {
          cur = ch_.p[static_cast<std::size_t>(k + 1)] + o;
        } else {
          const PlanePoint d = ch_.F[static_cast<std::size_t>(k * (S_ - 1) + i - 1)] + o - fr_.anchor(i);
          const std::complex<double> w = fr_.lambda(i) * std::complex<double>(d.x, d.y);
          cur = {w.real() + a_.x, w.imag() + a_.y};
        }
        const Vertex v = vertex(cur);
        sum += segment(pk, ch_.u[static_cast<std::size_t>(i - 1)], ch_.u[static_cast<std::size_t>(i)], prev, v, 0);
        prev = v;
      }
    }
    const PlanePoint tgt = ch_.target + o;
    const double bend = fr_.config().chord_bend;
    if (bend != 0.0) {
      const PlanePoint d = tgt - prev.p;
      const PlanePoint mid = 0.5 * (prev.p + tgt) + bend * PlanePoint{-d.y, d.x};
      sum += crossings(prev.p, mid) + crossings(mid, tgt);
    } else {
      sum += crossings(prev.p, tgt);
    }
    return sum;
  }

  long segment(PlanePoint pk, double t0, double t1, const Vertex& P, const Vertex& Q, int depth) const {
    const double l2 = norm2(Q.p - P.p);
    bool refine = false;
    if (l2 > std::min(P.da, Q.da)) refine = std::abs(detail::subtended(P.p, Q.p, a_)) >= tol_.max_angle;
    if (!refine && l2 > std::min(P.db, Q.db)) refine = std::abs(detail::subtended(P.p, Q.p, b_)) >= tol_.max_angle;
    if (!refine) return crossings(P.p, Q.p);
    if (depth >= tol_.max_depth) fail(ErrorKind::RefinementExhausted, "orbit refinement depth cap reached");
    const double tm = 0.5 * (t0 + t1);
    const Vertex M = vertex(N_.at(tm, pk));
    return segment(pk, t0, tm, P, M, depth + 1) + segment(pk, tm, t1, M, Q, depth + 1);
  }

  long crossings(PlanePoint P, PlanePoint Q) const {
    if (std::max(P.x, Q.x) < tlo_.x || std::min(P.x, Q.x) > thi_.x || std::max(P.y, Q.y) < tlo_.y ||
        std::min(P.y, Q.y) > thi_.y)
      return 0;
    long s = 0;
    for (std::size_t j = 0; j + 1 < tv_.size(); ++j) s += crossing_sign(tv_[j], tv_[j + 1], P, Q);
    return s;
  }

  const PairFrame& fr_;
  const OrbitChunk& ch_;
  const PlaneIsotopy& N_;
  PlanePoint a_, b_;
  std::vector<PlanePoint> tv_;
  double reach_;
  ToleranceConfig tol_;
  int S_;
  PlanePoint c_;
  double R_;
  double g2_;
  PlanePoint tlo_{INFINITY, INFINITY}, thi_{-INFINITY, -INFINITY};
};

} // namespace

long chunk_linking(const PairFrame& frame, const OrbitChunk& chunk) {
  for (int attempt = 0; attempt <= frame.config().jitter_attempts; ++attempt) {
    try {
      ChunkCounter counter(frame, chunk, attempt);
      return counter.total();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateIncidence) throw;
    }
  }
  fail(ErrorKind::DegenerateIncidence, "transversal stays degenerate after jitter retries");
}

long birkhoff_L(const Isotopy& I, PlanePoint a, PlanePoint b, TorusPoint z, const ReturnDisk& U, int n,
                const LinkingConfig& cfg) {
  return birkhoff_L(PairFrame(I, a, b, cfg), z, U, n);
}

long birkhoff_L(const PairFrame& frame, TorusPoint z, const ReturnDisk& U, int n) {
  const Isotopy& I = frame.isotopy();
  const Torus& T = I.torus();
  require_admissible(T, U, z, frame.a(), frame.b());
  if (n < 1) fail(ErrorKind::ConfigError, "birkhoff_L needs n ≥ 1");
  OrbitChunk ch = make_chunk(I, frame.config().samples_per_piece);
  ch.reset(T.base_lift(z));
  int returns = 0;
  while (returns < n) {
    if (ch.steps() >= U.cap) fail(ErrorKind::CapExceeded, "no return to the disk within the iteration cap");
    ch.step(I);
    if (in_disk(T, U, T.project(ch.p.back()))) ++returns;
  }
  ch.close(T);
  return chunk_linking(frame, ch);
}

std::vector<long> birkhoff_L_terms(const PairFrame& frame, TorusPoint z, const ReturnDisk& U, int n) {
  const Isotopy& I = frame.isotopy();
  const Torus& T = I.torus();
  require_admissible(T, U, z, frame.a(), frame.b());
  std::vector<long> out;
  OrbitChunk ch = make_chunk(I, frame.config().samples_per_piece);
  PlanePoint start = T.base_lift(z);
  long used = 0;
  for (int j = 0; j < n; ++j) {
    ch.reset(start);
    do {
      if (++used > U.cap) fail(ErrorKind::CapExceeded, "no return to the disk within the iteration cap");
      ch.step(I);
    } while (!in_disk(T, U, T.project(ch.p.back())));
    ch.close(T);
    out.push_back(chunk_linking(frame, ch));
    start = ch.p.back();
  }
  return out;
}

long winding_difference_oracle(const Isotopy& I, PlanePoint a, PlanePoint b, TorusPoint z, const ReturnDisk& U,
                               int n, const LinkingConfig& cfg, int shells) {
  const Torus& T = I.torus();
  require_admissible(T, U, z, a, b);
  const PlaneIsotopy N = normalize_fixing_two(I, a, b, cfg.tol);
  const int S = std::max(4, cfg.samples_per_piece * I.pieces());

  std::vector<PlanePoint> orbit{T.base_lift(z)};
  int returns = 0;
  while (returns < n) {
    if (static_cast<long>(orbit.size()) > U.cap) fail(ErrorKind::CapExceeded, "no return within the cap");
    orbit.push_back(I.time_one(orbit.back()));
    if (in_disk(T, U, T.project(orbit.back()))) ++returns;
  }
  if (!(T.deck_between(orbit.front(), orbit.back()) == DeckElement{}))
    fail(ErrorKind::ConfigError, "oracle needs an orbit segment that closes in the cover");
  const long m = static_cast<long>(orbit.size()) - 1;
  const DeckElement beta = T.deck_between(orbit.front(), T.lift_near(T.project(orbit.front()), a));

  long total = 0;
  for (int si = -shells; si <= shells; ++si)
    for (int sj = -shells; sj <= shells; ++sj) {
      const PlanePoint o = T.offset(beta + DeckElement{si, sj});
      // Time s in [k, k+1) runs step k; [m, m+1] is the closing chord.
      auto curve = [&](double s) -> PlanePoint {
        if (s >= static_cast<double>(m)) {
          const double f = s - static_cast<double>(m);
          return (1.0 - f) * (orbit.back() + o) + f * (orbit.front() + o);
        }
        const long k = std::min(static_cast<long>(std::floor(s)), m - 1);
        return N.at(s - static_cast<double>(k), orbit[static_cast<std::size_t>(k)] + o);
      };
      std::vector<PlanePoint> v;
      std::vector<double> ts;
      auto push = [&](double s, PlanePoint p) {
        if (!v.empty() && v.back() == p) return;
        v.push_back(p);
        ts.push_back(s);
      };
      for (long k = 0; k < m; ++k)
        for (int i = 0; i < S; ++i) {
          const double s = static_cast<double>(k) + static_cast<double>(i) / S;
          push(s, i == 0 ? orbit[static_cast<std::size_t>(k)] + o : N.at(static_cast<double>(i) / S,
                                                                          orbit[static_cast<std::size_t>(k)] + o));
        }
      push(static_cast<double>(m), orbit.back() + o);
      push(static_cast<double>(m) + 1.0, orbit.front() + o);
      if (v.size() < 2) continue;
      const PlanePath path(std::move(v), std::move(ts), curve);
      total += std::lround(winding_number(path, a, cfg.tol)) - std::lround(winding_number(path, b, cfg.tol));
    }
  return total;
}

RecurrentLinking recurrent_linking(const Isotopy& I, PlanePoint a, PlanePoint b, TorusPoint z, const ReturnDisk& U,
                                   const ConvergenceConfig& conv, const LinkingConfig& cfg) {
  const PairFrame frame(I, a, b, cfg);
  return recurrent_linking_multi({&frame}, z, U, conv, true).front();
}

std::vector<RecurrentLinking> recurrent_linking_multi(const std::vector<const PairFrame*>& frames, TorusPoint z,
                                                      const ReturnDisk& U, const ConvergenceConfig& conv,
                                                      bool strict) {
  if (frames.empty()) return {};
  const Isotopy& I = frames.front()->isotopy();
  const Torus& T = I.torus();
  for (const PairFrame* f : frames) require_admissible(T, U, z, f->a(), f->b());
  const std::size_t P = frames.size();

  std::vector<long> cum(P, 0);
  std::vector<std::deque<double>> win(P);
  std::vector<RecurrentLinking> out(P);
  OrbitChunk ch = make_chunk(I, frames.front()->config().samples_per_piece);
  ch.reset(T.base_lift(z));
  long tau = 0, returns = 0, estimates = 0;
  bool exited = false;
  const long cap = std::min(conv.cap, U.cap);

  auto finish = [&](bool converged) {
    for (std::size_t j = 0; j < P; ++j) {
      auto& r = out[j];
      r.value = tau > 0 ? static_cast<double>(cum[j]) / static_cast<double>(tau) : 0.0;
      r.iterations = tau;
      r.returns = returns;
      r.estimates = estimates;
      r.converged = converged;
      if (!win[j].empty()) {
        const auto [lo, hi] = std::minmax_element(win[j].begin(), win[j].end());
        r.spread = *hi - *lo;
      }
    }
    return out;
  };

  while (true) {
    if (tau + ch.steps() >= cap) {
      // Fold the open chunk in only if it ends in the disk.
      if (strict) fail(ErrorKind::NotConverged, "recurrent linking did not stabilise within the iteration cap");
      return finish(false);
    }
    ch.step(I);
    const TorusPoint q = T.project(ch.p.back());
    if (!in_disk(T, U, q)) {
      exited = true;
      continue;
    }
    ++returns;
    const bool periodic = T.distance(q, z) < conv.periodic_tol;
    if (!exited && !periodic && ch.steps() < conv.max_chunk) continue;
    ch.close(T);
    tau += ch.steps();
    for (std::size_t j = 0; j < P; ++j) cum[j] += chunk_linking(*frames[j], ch);
    ++estimates;
    if (periodic) {
      finish(true);
      for (std::size_t j = 0; j < P; ++j) {
        out[j].exact = Rational::make(cum[j], tau);
        out[j].value = out[j].exact->value();
        out[j].spread = 0.0;
      }
      return out;
    }
    bool settled = true;
    for (std::size_t j = 0; j < P; ++j) {
      win[j].push_back(static_cast<double>(cum[j]) / static_cast<double>(tau));
      if (static_cast<int>(win[j].size()) > conv.window) win[j].pop_front();
      const auto [lo, hi] = std::minmax_element(win[j].begin(), win[j].end());
      if (static_cast<int>(win[j].size()) < conv.window || *hi - *lo >= conv.delta) settled = false;
    }
    if (settled) return finish(true);
    ch.reset(T.base_lift(q));
    exited = false;
  }
}

RotationEstimate rotation_vector_point(const Isotopy& I, TorusPoint z, const ReturnDisk& U,
                                       const ConvergenceConfig& conv, bool strict) {
  const Torus& T = I.torus();
  check_disk(T, U);
  if (!in_disk(T, U, z)) fail(ErrorKind::ConfigError, "base point must lie in the return disk");
  const double L = T.modulus();
  const PlanePoint p0 = T.base_lift(z);
  PlanePoint p = p0;
  std::deque<PlanePoint> win;
  RotationEstimate r;
  bool exited = false;
  long last = 0;
  const long cap = std::min(conv.cap, U.cap);
  auto spread = [&] {
    double s = 0.0;
    for (const auto& a : win)
      for (const auto& b : win) s = std::max({s, std::abs(a.x - b.x), std::abs(a.y - b.y)});
    return s;
  };
  for (long tau = 1; tau <= cap; ++tau) {
    p = I.time_one(p);
    const TorusPoint q = T.project(p);
    if (!in_disk(T, U, q)) {
      exited = true;
      continue;
    }
    ++r.returns;
    const bool periodic = T.distance(q, z) < conv.periodic_tol;
    if (!exited && !periodic && tau - last < conv.max_chunk) continue;
    exited = false;
    last = tau;
    const DeckElement k = T.deck_between(p0, T.lift_near(z, p));
    r.iterations = tau;
    if (periodic) {
      r.exact = std::array<Rational, 2>{Rational::make(k.m, tau), Rational::make(k.n, tau)};
      r.value = {L * static_cast<double>(k.m) / static_cast<double>(tau), L * static_cast<double>(k.n) / static_cast<double>(tau)};
      r.spread = 0.0;
      r.converged = true;
      return r;
    }
    r.value = {L * static_cast<double>(k.m) / static_cast<double>(tau), L * static_cast<double>(k.n) / static_cast<double>(tau)};
    win.push_back(r.value);
    if (static_cast<int>(win.size()) > conv.window) win.pop_front();
    r.spread = spread();
    if (static_cast<int>(win.size()) == conv.window && r.spread < conv.delta) {
      r.converged = true;
      return r;
    }
  }
  r.iterations = cap;
  if (strict) fail(ErrorKind::NotConverged, "rotation vector did not stabilise within the iteration cap");
  return r;
}

} // namespace tact
