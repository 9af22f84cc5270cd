#include "tact/action.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "tact/error.hpp"
#include "tact/reduce.hpp"

namespace tact {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double default_radius(const Torus& T, const ActionConfig& cfg) {
  return cfg.disk_radius > 0.0 ? cfg.disk_radius : T.modulus() / 32.0;
}

// i(a_i, a_j, z) for a list of pairs, sharing the orbit of z.
class PairIntegrand {
public:
  PairIntegrand(const Isotopy& I, const std::vector<PlanePoint>& lifts,
                const std::vector<std::pair<std::size_t, std::size_t>>& pairs, const ActionConfig& cfg)
      : I_(I), lifts_(lifts), pairs_(pairs), cfg_(cfg) {
    const Torus& T = I.torus();
    for (const auto& [i, j] : pairs) {
      if (i >= lifts.size() || j >= lifts.size() || i == j) fail(ErrorKind::ConfigError, "bad lift pair index");
      frames_.push_back(std::make_unique<PairFrame>(I, lifts[i], lifts[j], cfg.link));
    }
    for (const auto& p : lifts) {
      sums_.push_back(std::make_unique<LiftSum>(I, p, cfg.fixed));
      proj_.push_back(T.project(p));
    }
    for (const auto& f : frames_) ptrs_.push_back(f.get());
  }

  bool operator()(TorusPoint z, std::span<double> out) const {
    const Torus& T = I_.torus();
    const double geom = cfg_.link.tol.geom;
    double dmin = INFINITY;
    for (const auto& [i, j] : pairs_) dmin = std::min({dmin, T.distance(z, proj_[i]), T.distance(z, proj_[j])});
    std::fill(out.begin(), out.end(), 0.0);
    if (dmin <= geom) return true;

    const PlanePoint p = T.base_lift(z);
    const PlanePoint d = I_.time_one(p) - p;
    if (norm(T.minimal_image(d)) < cfg_.fixed_tol) {
      if (norm(d) < cfg_.fixed_tol) {
        const auto ws = sums_.front()->samples(p);
        std::vector<long> S(lifts_.size(), 0);
        std::vector<char> have(lifts_.size(), 0);
        auto sum_for = [&](std::size_t k) {
          if (!have[k]) {
            const PlanePoint o = T.offset(T.deck_between(p, T.lift_near(z, lifts_[k])));
            std::vector<PlanePoint> wk(ws);
            for (auto& w : wk) w = w + o;
            S[k] = (*sums_[k])(z, wk);
            have[k] = 1;
          }
          return S[k];
        };
        for (std::size_t q = 0; q < pairs_.size(); ++q)
          out[q] = static_cast<double>(sum_for(pairs_[q].first) - sum_for(pairs_[q].second));
      } else {
        // Non-contractible fixed point: one step, closed by the trivial chord.
        OrbitChunk ch = make_chunk(I_, cfg_.link.samples_per_piece);
        ch.reset(p);
        ch.step(I_);
        ch.close(T);
        for (std::size_t q = 0; q < pairs_.size(); ++q) out[q] = static_cast<double>(chunk_linking(*frames_[q], ch));
      }
      return true;
    }

    const ReturnDisk U{z, std::min(default_radius(T, cfg_), 0.45 * dmin), cfg_.conv.cap};
    const auto res = recurrent_linking_multi(ptrs_, z, U, cfg_.conv, false);
    bool ok = true;
    for (std::size_t q = 0; q < pairs_.size(); ++q) {
      out[q] = res[q].value;
      ok = ok && res[q].converged;
    }
    return ok;
  }

  bool contractible_fixed(TorusPoint z) const {
    const PlanePoint p = I_.torus().base_lift(z);
    return norm(I_.time_one(p) - p) < cfg_.fixed_tol;
  }

private:
  const Isotopy& I_;
  std::vector<PlanePoint> lifts_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  ActionConfig cfg_;
  std::vector<std::unique_ptr<PairFrame>> frames_;
  std::vector<const PairFrame*> ptrs_;
  std::vector<std::unique_ptr<LiftSum>> sums_;
  std::vector<TorusPoint> proj_;
};

} // namespace

RotationMeasure rotation_vector_measure(const Isotopy& I, const Measure& mu, const ActionConfig& cfg) {
  const Torus& T = I.torus();
  RotationMeasure r;
  r.mass = mu.total_mass();
  const double rad = default_radius(T, cfg);
  if (mu.kind() == Measure::Kind::Atomic) {
    check_invariant(mu, I);
    std::vector<double> wx, wy;
    for (const auto& a : mu.atoms()) {
      const RotationEstimate e = rotation_vector_point(I, a.z, ReturnDisk{a.z, rad, cfg.conv.cap}, cfg.conv, true);
      wx.push_back(a.w * e.value.x);
      wy.push_back(a.w * e.value.y);
    }
    r.integral = {pairwise_sum(wx), pairwise_sum(wy)};
  } else {
    auto f = [&](TorusPoint z, std::span<double> out) {
      const RotationEstimate e = rotation_vector_point(I, z, ReturnDisk{z, rad, cfg.conv.cap}, cfg.conv, false);
      out[0] = e.value.x;
      out[1] = e.value.y;
      return e.converged;
    };
    const QuadratureResult q = integrate_grid(T, [&](TorusPoint z) { return mu.density(z); }, 2, f, cfg.quad);
    r.integral = {q.value[0], q.value[1]};
    r.error = {q.error[0] / r.mass, q.error[1] / r.mass};
    r.unconverged = q.unconverged_cells;
  }
  r.mean = {r.integral.x / r.mass, r.integral.y / r.mass};
  return r;
}

PairwiseAction action_pairs(const Isotopy& I, const Measure& mu, const std::vector<PlanePoint>& lifts,
                            const std::vector<std::pair<std::size_t, std::size_t>>& pairs, const ActionConfig& cfg) {
  const Torus& T = I.torus();
  PairwiseAction out;
  out.lifts = lifts;
  out.pairs = pairs;
  out.values.resize(pairs.size());
  if (pairs.empty()) return out;
  const PairIntegrand f(I, lifts, pairs, cfg);
  const int k = static_cast<int>(pairs.size());

  if (mu.kind() == Measure::Kind::Atomic) {
    check_invariant(mu, I);
    std::vector<std::vector<double>> terms(pairs.size());
    std::vector<double> buf(pairs.size());
    for (const auto& a : mu.atoms()) {
      if (f.contractible_fixed(a.z)) fail(ErrorKind::ConfigError, "measure has an atom on a contractible fixed point");
      if (!f(a.z, buf)) fail(ErrorKind::NotConverged, "recurrent linking at an atom did not stabilise");
      for (std::size_t q = 0; q < pairs.size(); ++q) terms[q].push_back(a.w * buf[q]);
    }
    for (std::size_t q = 0; q < pairs.size(); ++q) out.values[q] = {pairwise_sum(terms[q]), 0.0};
    out.cells = static_cast<long>(mu.atoms().size());
    return out;
  }

  const QuadratureResult q = integrate_grid(
      T, [&](TorusPoint z) { return mu.density(z); }, k, [&](TorusPoint z, std::span<double> o) { return f(z, o); },
      cfg.quad);
  for (std::size_t c = 0; c < pairs.size(); ++c) out.values[c] = {q.value[c], q.error[c]};
  out.unconverged = q.unconverged_cells;
  out.jump_cells = q.jump_cells;
  out.cells = q.cells;
  return out;
}

PairValue action_difference(const Isotopy& I, const Measure& mu, PlanePoint a, PlanePoint b, const ActionConfig& cfg) {
  return action_pairs(I, mu, {a, b}, {{0, 1}}, cfg).values.front();
}

double action_integrand(const Isotopy& I, PlanePoint a, PlanePoint b, TorusPoint z, const ActionConfig& cfg) {
  const PairIntegrand f(I, {a, b}, {{0, 1}}, cfg);
  double v = 0.0;
  if (!f(z, std::span<double>(&v, 1))) fail(ErrorKind::NotConverged, "integrand did not stabilise");
  return v;
}

ActionReport solve_action_function(const Isotopy& I, const Measure& mu, const std::vector<LabeledLift>& lifts,
                                   const ActionConfig& cfg) {
  const Torus& T = I.torus();
  const std::size_t m = lifts.size();
  if (m < 2) fail(ErrorKind::ConfigError, "action function needs at least two lifts");
  ActionReport rep;
  rep.lifts = lifts;

  ActionConfig gate = cfg;
  gate.quad.grid_n = cfg.rho_grid;
  gate.quad.richardson = false;
  const RotationMeasure rho = rotation_vector_measure(I, mu, gate);
  rep.rho = rho.mean;
  const double rt = cfg.rho_zero_tol * T.modulus();
  rep.rho_zero = std::abs(rho.mean.x) <= rt && std::abs(rho.mean.y) <= rt;

  std::vector<PlanePoint> pts;
  for (const auto& l : lifts) pts.push_back(l.lift);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  if (rep.rho_zero) {
    pts.push_back(T.apply({1, 0}, pts.front()));
    pts.push_back(T.apply({0, 1}, pts.front()));
    pairs.emplace_back(0, m);
    pairs.emplace_back(0, m + 1);
  }
  const PairwiseAction pw = action_pairs(I, mu, pts, pairs, cfg);
  rep.unconverged = pw.unconverged;

  rep.imu.assign(m * m, 0.0);
  rep.imu_error.assign(m * m, 0.0);
  std::size_t q = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j, ++q) {
      rep.imu[i * m + j] = pw.values[q].value;
      rep.imu[j * m + i] = -pw.values[q].value;
      rep.imu_error[i * m + j] = rep.imu_error[j * m + i] = pw.values[q].error;
      rep.quad_error = std::max(rep.quad_error, pw.values[q].error);
    }

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k)
        rep.cocycle_residual =
            std::max(rep.cocycle_residual, std::abs(rep.at(i, j) + rep.at(j, k) + rep.at(k, i)));
  if (cfg.enforce_cocycle && rep.cocycle_residual > 10.0 * rep.quad_error + 1e-12)
    fail(ErrorKind::CocycleResidualExceeded, "cocycle residual " + std::to_string(rep.cocycle_residual) +
                                                 " exceeds ten times the quadrature error");

  // Least squares on the complete graph has the closed form mean of a row.
  rep.l.assign(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<double> col;
    for (std::size_t j = 0; j < m; ++j) col.push_back(rep.at(j, k));
    rep.l[k] = pairwise_sum(col) / static_cast<double>(m);
  }
  const double l0 = rep.l.front();
  for (auto& v : rep.l) v -= l0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j)
        rep.reconstruction_residual =
            std::max(rep.reconstruction_residual, std::abs(rep.l[j] - rep.l[i] - rep.at(i, j)));

  std::vector<double> spec = rep.l;
  if (rep.rho_zero) {
    const double tol = std::max(cfg.deck_tol, 10.0 * rep.quad_error);
    for (std::size_t e = 0; e < 2; ++e) {
      const PairValue& v = pw.values[pairs.size() - 2 + e];
      rep.deck_check.push_back(v.value);
      if (std::abs(v.value) > std::max(cfg.deck_tol, 10.0 * v.error))
        fail(ErrorKind::DeckInconsistent, "i_mu(a, alpha a) does not vanish although rho(mu) = 0");
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (T.distance(T.project(pts[i]), T.project(pts[j])) < cfg.link.tol.geom &&
            std::abs(rep.l[i] - rep.l[j]) > tol)
          fail(ErrorKind::DeckInconsistent, "lifts of one point carry different action values");
    rep.L = rep.l;
  }

  std::sort(spec.begin(), spec.end());
  const double merge = 10.0 * rep.quad_error + 1e-12;
  for (double v : spec)
    if (rep.spectrum.empty() || v - rep.spectrum.back() > merge) rep.spectrum.push_back(v);
  rep.width = spec.back() - spec.front();
  return rep;
}

HamiltonianData twist_hamiltonian(const Torus& T, TorusPoint center, RadialProfile profile) {
  center = T.reduce(center.x, center.y);
  HamiltonianData h;
  h.convention = "dH = -i_X omega, omega = dx^dy, H = 0 outside the twist support";
  h.H = [T, center, profile](double, TorusPoint z) {
    const double r = T.distance(z, center);
    if (r >= profile.radius) return 0.0;
    return -kTwoPi * (profile.moment(profile.radius) - profile.moment(r));
  };
  return h;
}

namespace {

double loop_area(const Isotopy& I, PlanePoint x, int N) {
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(N));
  PlanePoint prev = x;
  for (int i = 1; i <= N; ++i) {
    const PlanePoint cur = i == N ? x : I.lifted(static_cast<double>(i) / N, x);
    terms.push_back(0.5 * cross(prev - x, cur - x));
    prev = cur;
  }
  return pairwise_sum(terms);
}

template <class F>
double simpson(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = f(0.5 * (a + m)), rm = f(0.5 * (m + b));
  const double left = (m - a) / 6.0 * (fa + 4.0 * lm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * rm + fb);
  if (depth >= 40 || std::abs(left + right - whole) <= 15.0 * tol) return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, lm, fm, left, 0.5 * tol, depth + 1) + simpson(f, m, b, fm, rm, fb, right, 0.5 * tol, depth + 1);
}

} // namespace

double classical_action(const HamiltonianData& H, const Isotopy& I, TorusPoint x) {
  const Torus& T = I.torus();
  const PlanePoint p = T.base_lift(x);
  if (!(norm(I.time_one(p) - p) < 1e-9)) fail(ErrorKind::NotContractibleFixed, "classical action needs a contractible fixed point");

  // Polygon areas converge like N^-2; extrapolate from successive doublings.
  int N = 256 * I.pieces();
  double prev = loop_area(I, p, N);
  double area = prev;
  for (int it = 0; it < 8; ++it) {
    N *= 2;
    const double cur = loop_area(I, p, N);
    area = (4.0 * cur - prev) / 3.0;
    if (std::abs(cur - prev) < 1e-12 * std::max(1.0, std::abs(cur))) break;
    prev = cur;
  }

  auto h = [&](double t) { return H.H(t, T.project(I.lifted(t, p))); };
  double integral = 0.0;
  const int pieces = std::max(1, I.pieces());
  for (int k = 0; k < pieces; ++k) {
    const double a = static_cast<double>(k) / pieces, b = static_cast<double>(k + 1) / pieces;
    const double fa = h(a), fb = h(b), fm = h(0.5 * (a + b));
    integral += simpson(h, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), 1e-13, 0);
  }
  return area - integral;
}

bool IterationReport::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const IterationEntry& e) { return e.pass; });
}

IterationReport verify_iteration(const Isotopy& I, const Measure& mu, PlanePoint a, PlanePoint b,
                                 const std::vector<int>& qs, const ActionConfig& cfg) {
  IterationReport rep;
  rep.base = action_difference(I, mu, a, b, cfg);
  for (int q : qs) {
    IterationEntry e;
    e.q = q;
    e.value = q == 1 ? rep.base : action_difference(power(I, q), mu, a, b, cfg);
    e.ratio = e.value.value / rep.base.value;
    e.deviation = std::abs(e.ratio - q) / q;
    const double rel = e.value.error / std::abs(e.value.value) + rep.base.error / std::abs(rep.base.value);
    e.pass = e.deviation < 1e-3 + 10.0 * rel;
    rep.entries.push_back(e);
  }
  return rep;
}

SchwarzReport verify_schwarz(const Isotopy& I, const Measure& mu, std::vector<LabeledLift> lifts, int n_max,
                             const ActionConfig& cfg, int fixed_grid) {
  const Torus& T = I.torus();
  SchwarzReport rep;
  ActionConfig gate = cfg;
  gate.quad.grid_n = cfg.rho_grid;
  gate.quad.richardson = false;
  rep.rho = rotation_vector_measure(I, mu, gate).mean;
  const double rt = cfg.rho_zero_tol * T.modulus();
  rep.rho_zero = std::abs(rep.rho.x) <= rt && std::abs(rep.rho.y) <= rt;

  const FixedPointSet fix = find_fixed_points(I, fixed_grid);
  rep.fixed_points = static_cast<int>(fix.points.size());
  for (const auto& p : fix.points) rep.contractible += p.contractible ? 1 : 0;
  rep.identity = rep.contractible == fixed_grid * fixed_grid;

  if (!rep.rho_zero) {
    rep.verdict = "rho(mu) != 0: isotopy is not mu-Hamiltonian";
    return rep;
  }
  if (rep.contractible == 0) {
    rep.hypothesis_violated = !mu.full_support();
    rep.verdict = rep.hypothesis_violated ? "no contractible fixed points; full-support hypothesis violated"
                                          : "no contractible fixed points";
    return rep;
  }
  if (rep.identity) {
    rep.widths.assign(static_cast<std::size_t>(n_max), 0.0);
    rep.width_errors.assign(static_cast<std::size_t>(n_max), 0.0);
    rep.verdict = "identity map: width 0";
    return rep;
  }
  if (lifts.empty()) {
    for (std::size_t c = 0; c < fix.representative.size(); ++c) {
      const auto& r = fix.points[fix.representative[c]];
      if (r.contractible) lifts.push_back({"component" + std::to_string(c), r.lift});
    }
  }
  if (lifts.size() < 2) {
    rep.verdict = "single fixed component: width 0";
    rep.widths.assign(static_cast<std::size_t>(n_max), 0.0);
    rep.width_errors.assign(static_cast<std::size_t>(n_max), 0.0);
    return rep;
  }
  ActionConfig c2 = cfg;
  c2.enforce_cocycle = false;
  for (int n = 1; n <= n_max; ++n) {
    const ActionReport ar = solve_action_function(power(I, n), mu, lifts, c2);
    rep.widths.push_back(ar.width);
    rep.width_errors.push_back(2.0 * ar.quad_error);
  }
  // Least-squares slope of width against n.
  double sn = 0, sw = 0;
  for (int n = 1; n <= n_max; ++n) {
    sn += n;
    sw += rep.widths[static_cast<std::size_t>(n - 1)];
  }
  const double mn = sn / n_max, mw = sw / n_max;
  double num = 0, den = 0;
  for (int n = 1; n <= n_max; ++n) {
    num += (n - mn) * (rep.widths[static_cast<std::size_t>(n - 1)] - mw);
    den += (n - mn) * (n - mn);
  }
  rep.slope = den > 0 ? num / den : 0.0;
  rep.nonconstant = rep.widths.front() > 3.0 * rep.width_errors.front();
  rep.verdict = rep.nonconstant ? "action function is not constant" : "width within error bars of 0";
  return rep;
}

KacReport kac_check(const Isotopy& I, const Measure& mu, const ReturnDisk& U, double tol) {
  if (mu.kind() != Measure::Kind::Atomic) fail(ErrorKind::ConfigError, "kac_check needs an atomic measure");
  const Torus& T = I.torus();
  check_disk(T, U);
  check_invariant(mu, I);
  std::vector<double> lhs, rhs;
  const long n = static_cast<long>(mu.atoms().size());
  KacReport rep;
  for (const auto& a : mu.atoms()) {
    if (in_disk(T, U, a.z)) {
      ++rep.atoms_in_disk;
      lhs.push_back(a.w * static_cast<double>(first_return(I, U, a.z).tau));
    }
    // Atoms are periodic with period at most n.
    TorusPoint w = a.z;
    bool meets = in_disk(T, U, w);
    for (long k = 0; k < n && !meets; ++k) {
      w = I.map(w);
      if (T.distance(w, a.z) < 1e-9) break;
      meets = in_disk(T, U, w);
    }
    if (meets) rhs.push_back(a.w);
  }
  rep.lhs = pairwise_sum(lhs);
  rep.rhs = pairwise_sum(rhs);
  rep.pass = std::abs(rep.lhs - rep.rhs) <= tol;
  return rep;
}

} // namespace tact
