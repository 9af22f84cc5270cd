#include "tact/linking.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_map>

#include "tact/error.hpp"
#include "tact/random.hpp"
#include "tact/winding_detail.hpp"

namespace tact {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

// Damped Newton on the torus displacement g(x) = F(x) - x.
bool newton_fixed(const Isotopy& I, PlanePoint& x, double tol) {
  const Torus& T = I.torus();
  auto g = [&](PlanePoint p) { return T.minimal_image(I.time_one(p) - p); };
  PlanePoint r = g(x);
  double rn = norm(r);
  for (int it = 0; it < 100 && rn >= tol; ++it) {
    const double h = 1e-7 * T.modulus();
    const PlanePoint gx = (1.0 / (2.0 * h)) * (g(x + PlanePoint{h, 0}) - g(x - PlanePoint{h, 0}));
    const PlanePoint gy = (1.0 / (2.0 * h)) * (g(x + PlanePoint{0, h}) - g(x - PlanePoint{0, h}));
    const double det = gx.x * gy.y - gy.x * gx.y;
    if (!(std::abs(det) > 1e-14)) return false;
    const PlanePoint step{(gy.y * r.x - gy.x * r.y) / det, (-gx.y * r.x + gx.x * r.y) / det};
    double lam = 1.0;
    PlanePoint xn = x - step;
    PlanePoint rnew = g(xn);
    while (norm(rnew) >= rn && lam > 1e-4) {
      lam *= 0.5;
      xn = x - lam * step;
      rnew = g(xn);
    }
    if (norm(rnew) >= rn) return false;
    x = xn;
    r = rnew;
    rn = norm(r);
  }
  return rn < tol;
}

int sample_count(const Isotopy& I, int per_piece) { return std::max(4, per_piece * I.pieces()); }

std::vector<double> uniform_times(int S) {
  std::vector<double> t(static_cast<std::size_t>(S) + 1);
  for (int i = 0; i <= S; ++i) t[static_cast<std::size_t>(i)] = static_cast<double>(i) / S;
  t.back() = 1.0;
  return t;
}

std::vector<PlanePoint> sample_path(const Isotopy& I, PlanePoint p, const std::vector<double>& times) {
  std::vector<PlanePoint> out(times.size());
  for (std::size_t i = 0; i + 1 < times.size(); ++i) out[i] = I.lifted(times[i], p);
  out.back() = I.time_one(p);
  return out;
}

// Degree of the closed difference loop D_i, refined through `curve`.
template <class Curve>
long loop_degree(const Curve& curve, const std::vector<double>& times, const std::vector<PlanePoint>& D,
                 const ToleranceConfig& tol) {
  double total = 0.0;
  for (std::size_t i = 0; i < D.size(); ++i)
    if (norm(D[i]) <= tol.geom) fail(ErrorKind::ClearanceViolation, "difference curve passes through the origin");
  for (std::size_t i = 0; i + 1 < D.size(); ++i)
    total += detail::sweep(curve, times[i], times[i + 1], D[i], D[i + 1], PlanePoint{}, tol);
  // Chord across the residual gap between D(1) and D(0).
  total += detail::subtended(D.back(), D.front(), PlanePoint{});
  const double turns = total / kTwoPi;
  const double r = std::round(turns);
  if (std::abs(turns - r) > tol.integer_tol) fail(ErrorKind::RefinementExhausted, "difference loop degree is not integral");
  return static_cast<long>(r);
}

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

} // namespace

FixedPointSet find_fixed_points(const Isotopy& I, int grid_n, double tol) {
  if (grid_n < 8) fail(ErrorKind::ConfigError, "fixed-point grid must be at least 8");
  const Torus& T = I.torus();
  const double L = T.modulus();
  const double h = L / grid_n;
  const auto n = static_cast<std::size_t>(grid_n);

  std::vector<double> res(n * n);
  std::vector<double> raw(n * n);
#if defined(TACT_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long k = 0; k < static_cast<long>(n * n); ++k) {
    const auto i = static_cast<std::size_t>(k) / n, j = static_cast<std::size_t>(k) % n;
    const PlanePoint p{static_cast<double>(i) * h, static_cast<double>(j) * h};
    const PlanePoint d = I.time_one(p) - p;
    res[static_cast<std::size_t>(k)] = norm(T.minimal_image(d));
    raw[static_cast<std::size_t>(k)] = norm(d);
  }

  FixedPointSet out;
  out.grid_n = grid_n;
  out.min_displacement = *std::min_element(res.begin(), res.end());

  auto idx = [n](long i, long j) {
    const long m = static_cast<long>(n);
    return static_cast<std::size_t>(((i % m + m) % m) * m + ((j % m + m) % m));
  };

  for (std::size_t k = 0; k < n * n; ++k) {
    if (!(res[k] < tol)) continue;
    const double x = static_cast<double>(k / n) * h, y = static_cast<double>(k % n) * h;
    out.points.push_back({T.reduce(x, y), {x, y}, raw[k] < tol, res[k]});
  }
  const std::size_t from_grid = out.points.size();

  // Strict local minima away from already fixed seeds.
  for (std::size_t k = 0; k < n * n; ++k) {
    if (res[k] < tol) continue;
    const long i = static_cast<long>(k / n), j = static_cast<long>(k % n);
    bool minimum = true;
    for (long di = -1; di <= 1 && minimum; ++di)
      for (long dj = -1; dj <= 1 && minimum; ++dj) {
        if (di == 0 && dj == 0) continue;
        const double v = res[idx(i + di, j + dj)];
        if (v < tol || v <= res[k]) minimum = false;
      }
    if (!minimum) continue;
    PlanePoint x{static_cast<double>(i) * h, static_cast<double>(j) * h};
    if (!newton_fixed(I, x, tol)) continue;
    const TorusPoint z = T.project(x);
    bool dup = false;
    for (const auto& r : out.points)
      if (T.distance(r.z, z) < 0.5 * h) dup = true;
    if (dup) continue;
    const PlanePoint lift = T.base_lift(z);
    const PlanePoint d = I.time_one(lift) - lift;
    const double rz = norm(T.minimal_image(d));
    if (!(rz < tol)) continue;
    out.points.push_back({z, lift, norm(d) < tol, rz});
  }

  // Union-find over points within spacing h (axis neighbours on the grid).
  UnionFind uf(out.points.size());
  std::unordered_map<std::size_t, int> at;
  for (std::size_t p = 0; p < from_grid; ++p) {
    const auto i = static_cast<long>(std::lround(out.points[p].lift.x / h));
    const auto j = static_cast<long>(std::lround(out.points[p].lift.y / h));
    at[idx(i, j)] = static_cast<int>(p);
  }
  for (std::size_t p = 0; p < from_grid; ++p) {
    const auto i = static_cast<long>(std::lround(out.points[p].lift.x / h));
    const auto j = static_cast<long>(std::lround(out.points[p].lift.y / h));
    for (auto [di, dj] : {std::pair{1L, 0L}, std::pair{0L, 1L}}) {
      auto it = at.find(idx(i + di, j + dj));
      if (it != at.end()) uf.unite(static_cast<int>(p), it->second);
    }
  }
  for (std::size_t p = from_grid; p < out.points.size(); ++p)
    for (std::size_t q = 0; q < out.points.size(); ++q)
      if (q != p && T.distance(out.points[p].z, out.points[q].z) <= h * (1.0 + 1e-9))
        uf.unite(static_cast<int>(p), static_cast<int>(q));

  std::unordered_map<int, int> label;
  out.component.resize(out.points.size());
  for (std::size_t p = 0; p < out.points.size(); ++p) {
    const int root = uf.find(static_cast<int>(p));
    auto [it, fresh] = label.emplace(root, static_cast<int>(label.size()));
    if (fresh) out.representative.push_back(p);
    out.component[p] = it->second;
  }
  out.components = static_cast<int>(label.size());
  return out;
}

long linking_pair(const Isotopy& I, PlanePoint p, PlanePoint q, const ToleranceConfig& tol) {
  require_fixed(I, p);
  require_fixed(I, q);
  if (norm(q - p) <= tol.geom) fail(ErrorKind::ConfigError, "linking_pair needs distinct lifts");
  const auto times = uniform_times(sample_count(I, 8));
  const auto fp = sample_path(I, p, times);
  const auto fq = sample_path(I, q, times);
  std::vector<PlanePoint> D(times.size());
  for (std::size_t i = 0; i < D.size(); ++i) D[i] = fq[i] - fp[i];
  auto curve = [&](double t) { return I.lifted(t, q) - I.lifted(t, p); };
  return loop_degree(curve, times, D, tol);
}

LiftSum::LiftSum(const Isotopy& I, PlanePoint a, const FixedLinkingConfig& cfg)
    : I_(I), a_(a), cfg_(cfg), times_(uniform_times(sample_count(I, cfg.samples_per_piece))) {
  require_fixed(I, a, 1e-9);
  fa_ = sample_path(I, a, times_);
}

std::vector<PlanePoint> LiftSum::samples(PlanePoint p) const { return sample_path(I_, p, times_); }

long LiftSum::operator()(TorusPoint z) const {
  const PlanePoint w0 = I_.torus().lift_near(z, a_);
  return (*this)(z, samples(w0));
}

long LiftSum::lift_term(PlanePoint w, const std::vector<PlanePoint>& ws, PlanePoint offset) const {
  std::vector<PlanePoint> D(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) D[i] = ws[i] + offset - fa_[i];
  auto curve = [&](double t) { return I_.lifted(t, w) - I_.lifted(t, a_); };
  return loop_degree(curve, times_, D, cfg_.tol);
}

long LiftSum::operator()(TorusPoint z, const std::vector<PlanePoint>& ws) const {
  const Torus& T = I_.torus();
  const PlanePoint w0 = T.lift_near(z, a_);
  if (T.distance(z, T.project(a_)) <= cfg_.tol.geom)
    fail(ErrorKind::ConfigError, "lift sum evaluated at the projection of its own lift");
  if (!(norm(ws.back() - ws.front()) < 1e-9)) {
    const bool fixed = norm(T.minimal_image(ws.back() - ws.front())) < 1e-9;
    fail(ErrorKind::NotContractibleFixed, fixed ? "fixed point is not contractible" : "point is not fixed");
  }

  // Bounding disk of the base difference cloud; lifts whose cloud keeps
  // clear of the origin have degree 0.
  double lo_x = INFINITY, lo_y = INFINITY, hi_x = -INFINITY, hi_y = -INFINITY;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const PlanePoint d = ws[i] - fa_[i];
    lo_x = std::min(lo_x, d.x);
    hi_x = std::max(hi_x, d.x);
    lo_y = std::min(lo_y, d.y);
    hi_y = std::max(hi_y, d.y);
  }
  const PlanePoint c{0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)};
  double R = 0.0;
  for (std::size_t i = 0; i < ws.size(); ++i) R = std::max(R, norm(ws[i] - fa_[i] - c));

  long sum = 0;
  int quiet = 0;
  for (int s = 0; s <= cfg_.shell_cap; ++s) {
    bool any = false;
    for_shell(s, [&](DeckElement al) {
      const PlanePoint o = T.offset(al);
      const PlanePoint w = w0 + o;
      if (norm(c + o) > 2.0 * R + cfg_.tol.geom && (R > 0.0 || norm(c + o) > cfg_.tol.geom)) return;
      const long t = lift_term(w, ws, o);
      if (t != 0) any = true;
      sum += t;
    });
    quiet = any ? 0 : quiet + 1;
    if (quiet >= cfg_.empty_shells) return sum;
  }
  fail(ErrorKind::ShellCapExceeded, "lift sum did not settle within the shell cap");
}

long linking_at_fixed(const Isotopy& I, PlanePoint a, PlanePoint b, TorusPoint z, const FixedLinkingConfig& cfg) {
  const Torus& T = I.torus();
  if (norm(a - b) <= cfg.tol.geom) fail(ErrorKind::ConfigError, "linking_at_fixed needs distinct lifts");
  if (T.distance(z, T.project(a)) <= cfg.tol.geom || T.distance(z, T.project(b)) <= cfg.tol.geom)
    fail(ErrorKind::ConfigError, "z must differ from the projections of the fixed lifts");
  const LiftSum sa(I, a, cfg), sb(I, b, cfg);
  return sa(z) - sb(z);
}

LinkingMatrix linking_matrix(const Isotopy& I, const std::vector<PlanePoint>& lifts, const ToleranceConfig& tol) {
  LinkingMatrix M;
  M.lifts = lifts;
  const std::size_t n = lifts.size();
  for (const auto& p : lifts) require_fixed(I, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (norm(lifts[i] - lifts[j]) <= tol.geom) fail(ErrorKind::ConfigError, "duplicate lift in linking matrix");
  M.entries.assign(n * n, 0);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<long> val(pairs.size(), 0);
  std::vector<int> failed(pairs.size(), 0);
  std::vector<std::string> why(pairs.size());
#if defined(TACT_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
  for (long k = 0; k < static_cast<long>(pairs.size()); ++k) {
    const auto [i, j] = pairs[static_cast<std::size_t>(k)];
    try {
      val[static_cast<std::size_t>(k)] = linking_pair(I, lifts[i], lifts[j], tol);
    } catch (const std::exception& e) {
      failed[static_cast<std::size_t>(k)] = 1;
      why[static_cast<std::size_t>(k)] = e.what();
    }
  }
  for (std::size_t k = 0; k < pairs.size(); ++k)
    if (failed[k]) fail(ErrorKind::ClearanceViolation, "linking matrix entry failed: " + why[k]);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    M.entries[i * n + j] = M.entries[j * n + i] = val[k];
    M.max_abs = std::max(M.max_abs, std::abs(val[k]));
  }
  return M;
}

WbReport wb_diagnostic(const Isotopy& I, const std::vector<PlanePoint>& lifts, const ToleranceConfig& tol) {
  WbReport r;
  r.matrix = linking_matrix(I, lifts, tol);
  const std::size_t n = lifts.size();
  r.row_bound.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) r.row_bound[i] = std::max(r.row_bound[i], std::abs(r.matrix.at(i, j)));
  for (long b : r.row_bound) r.global_bound = std::max(r.global_bound, b);
  r.attains_max.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.attains_max[i] = r.row_bound[i] == r.global_bound;
  return r;
}

PropertyReport check_linking_properties(const Isotopy& I, const PropertySamples& samples, const ToleranceConfig& tol) {
  PropertyReport rep;
  const Torus& T = I.torus();
  const auto& lifts = samples.lifts;
  const std::size_t n = lifts.size();
  const LinkingMatrix M = linking_matrix(I, lifts, tol);
  const CounterRng rng(samples.seed, 0x5031);
  std::uint64_t ctr = 0;

  auto fixed = [&](PlanePoint p) { return norm(I.time_one(p) - p) < 1e-9; };

  if (samples.perturbation > 0.0) {
    for (std::size_t i = 0; i < n; ++i)
      for (int k = 0; k < 4; ++k) {
        const double rad = samples.perturbation * std::sqrt(rng.uniform(ctr++));
        const double ang = kTwoPi * rng.uniform(ctr++);
        const PlanePoint p = lifts[i] + PlanePoint{rad * std::cos(ang), rad * std::sin(ang)};
        if (!fixed(p)) continue;
        bool clash = false;
        for (std::size_t j = 0; j < n; ++j)
          if (norm(p - lifts[j]) <= 10.0 * tol.geom && j != i) clash = true;
        if (clash) continue;
        ++rep.p1_probes;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          if (linking_pair(I, p, lifts[j], tol) != M.at(i, j)) {
            rep.p1 = false;
            rep.notes.push_back("P1: perturbed lift changed a linking number");
          }
        }
      }
  }

  for (int trial = 0; trial < samples.deck_trials; ++trial) {
    const DeckElement al{rng.integer(ctr++, -3, 3), rng.integer(ctr++, -3, 3)};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (linking_pair(I, T.apply(al, lifts[i]), T.apply(al, lifts[j]), tol) != M.at(i, j)) {
          rep.p2 = false;
          rep.notes.push_back("P2: deck translation changed a linking number");
        }
  }

  for (std::size_t i = 0; i < n; ++i)
    for (DeckElement al : {DeckElement{1, 0}, DeckElement{0, 1}, DeckElement{1, 1}, DeckElement{-1, 2}})
      if (linking_pair(I, lifts[i], T.apply(al, lifts[i]), tol) != 0) {
        rep.p3 = false;
        rep.notes.push_back("P3: lifts of one point are linked");
      }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (int s = 0; s <= samples.max_shell; ++s)
        for_shell(s, [&](DeckElement al) {
          const PlanePoint q = T.apply(al, lifts[j]);
          if (norm(q - lifts[i]) <= tol.geom) return;
          if (linking_pair(I, lifts[i], q, tol) != 0) {
            rep.vanishing_shell = std::max(rep.vanishing_shell, s);
            rep.empirical_k = std::max(rep.empirical_k, norm(q - lifts[i]));
          }
        });
  if (n > 0 && rep.vanishing_shell >= samples.max_shell) {
    rep.p4 = false;
    rep.notes.push_back("P4: nonzero linking persists to the outermost sampled shell");
  }
  rep.notes.push_back("sampled evidence on " + std::to_string(n) + " lifts");
  return rep;
}

} // namespace tact
