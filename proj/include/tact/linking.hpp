#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tact/isotopy.hpp"

namespace tact {

struct FixedPointRecord {
  TorusPoint z;
  PlanePoint lift;
  bool contractible = false;
  double residual = 0.0;  // |F(z) - z| on the torus
};

struct FixedPointSet {
  std::vector<FixedPointRecord> points;
  std::vector<int> component;              // component id per point
  std::vector<std::size_t> representative; // one point index per component
  int components = 0;
  double min_displacement = 0.0;           // min over seeds of |F(z) - z|
  int grid_n = 0;
};

// Grid seeding plus damped Newton refinement of local minima of the
// displacement. Components come from union-find at spacing L / grid_n.
FixedPointSet find_fixed_points(const Isotopy& I, int grid_n, double tol = 1e-9);

// Degree of t -> F_t(q) - F_t(p). Both points must be fixed lifts.
long linking_pair(const Isotopy& I, PlanePoint p, PlanePoint q, const ToleranceConfig& tol = {});

struct FixedLinkingConfig {
  ToleranceConfig tol;
  int samples_per_piece = 8;
  int shell_cap = 16;
  int empty_shells = 2;  // stop after this many consecutive all-zero shells
};

// Cached trajectory of one fixed lift, reused across many z.
class LiftSum {
public:
  LiftSum(const Isotopy& I, PlanePoint a, const FixedLinkingConfig& cfg = {});

  // Σ over lifts w of z of i(a, w). z must be a contractible fixed point
  // other than π(a).
  long operator()(TorusPoint z) const;
  long operator()(TorusPoint z, const std::vector<PlanePoint>& base_samples) const;

  PlanePoint a() const noexcept { return a_; }
  const std::vector<double>& times() const noexcept { return times_; }
  // F_t(p) at times(); shared between LiftSum objects on the same isotopy.
  std::vector<PlanePoint> samples(PlanePoint p) const;

private:
  long lift_term(PlanePoint w, const std::vector<PlanePoint>& ws, PlanePoint offset) const;

  Isotopy I_;
  PlanePoint a_;
  FixedLinkingConfig cfg_;
  std::vector<double> times_;
  std::vector<PlanePoint> fa_;
};

// i(a, b, z) = Σ_w (i(a, w) - i(b, w)) over lifts w of a contractible
// fixed point z.
long linking_at_fixed(const Isotopy& I, PlanePoint a, PlanePoint b, TorusPoint z, const FixedLinkingConfig& cfg = {});

struct LinkingMatrix {
  std::vector<PlanePoint> lifts;
  std::vector<long> entries;  // row-major; diagonal stored as 0 but undefined
  long max_abs = 0;

  long at(std::size_t i, std::size_t j) const { return entries[i * lifts.size() + j]; }
};

LinkingMatrix linking_matrix(const Isotopy& I, const std::vector<PlanePoint>& lifts, const ToleranceConfig& tol = {});

struct WbReport {
  LinkingMatrix matrix;
  std::vector<long> row_bound;
  std::vector<bool> attains_max;
  long global_bound = 0;
};

WbReport wb_diagnostic(const Isotopy& I, const std::vector<PlanePoint>& lifts, const ToleranceConfig& tol = {});

struct PropertySamples {
  std::vector<PlanePoint> lifts;
  double perturbation = 0.0;  // radius for the P1 local-constancy probe; 0 skips it
  int deck_trials = 8;
  int max_shell = 4;
  std::uint64_t seed = 0;
};

struct PropertyReport {
  bool p1 = true, p2 = true, p3 = true, p4 = true;
  int p1_probes = 0;
  double empirical_k = 0.0;  // largest distance of a nonzero pair seen
  int vanishing_shell = 0;   // pairs vanish for deck offsets beyond this shell
  std::vector<std::string> notes;

  bool pass() const { return p1 && p2 && p3 && p4; }
};

PropertyReport check_linking_properties(const Isotopy& I, const PropertySamples& samples,
                                        const ToleranceConfig& tol = {});

} // namespace tact
