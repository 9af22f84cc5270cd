#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "tact/isotopy.hpp"

namespace tact {

struct ReturnDisk {
  TorusPoint center;
  double radius = 0.125;
  long cap = 1'000'000;
};

// Throws ConfigError unless 0 < radius < L/4 and cap ≥ 1.
void check_disk(const Torus& T, const ReturnDisk& U);
bool in_disk(const Torus& T, const ReturnDisk& U, TorusPoint z);

struct FirstReturn {
  long tau = 0;
  TorusPoint point;
};

FirstReturn first_return(const Isotopy& I, const ReturnDisk& U, TorusPoint z);

struct ReturnOrbit {
  TorusPoint base;
  std::vector<long> tau;              // τ(Φ^j z), j < n
  std::vector<TorusPoint> points;     // Φ^{j+1} z
  std::vector<long> cumulative;       // τ_{j+1} = Σ_{i≤j} τ(Φ^i z)
};

ReturnOrbit return_orbit(const Isotopy& I, const ReturnDisk& U, TorusPoint z, int n);

struct Rational {
  long num = 0;
  long den = 1;

  static Rational make(long num, long den);
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

struct LinkingConfig {
  ToleranceConfig tol;
  int samples_per_piece = 6;  // trajectory samples per unit-speed piece
  double margin = -1.0;       // near-lift margin; negative means L
  int shell_cap = 16;
  std::uint64_t seed = 0;     // drives transversal jitter
  int jitter_attempts = 3;
  double chord_bend = 0.0;    // bends the closing chord sideways by this fraction of its length
};

// Normalization data for one ordered pair of fixed lifts, cached on the
// sampling grid so that many orbits can be processed against it.
class PairFrame {
public:
  PairFrame(const Isotopy& I, PlanePoint a, PlanePoint b, const LinkingConfig& cfg = {});

  const Isotopy& isotopy() const noexcept { return I_; }
  PlanePoint a() const noexcept { return a_; }
  PlanePoint b() const noexcept { return b_; }
  const LinkingConfig& config() const noexcept { return cfg_; }
  const PlaneIsotopy& normalized() const noexcept { return N_; }

  int samples() const noexcept { return S_; }
  double time(int i) const noexcept { return u_[static_cast<std::size_t>(i)]; }
  std::complex<double> lambda(int i) const noexcept { return lam_[static_cast<std::size_t>(i)]; }
  PlanePoint anchor(int i) const noexcept { return fa_[static_cast<std::size_t>(i)]; }
  double lambda_min() const noexcept { return lam_min_; }
  double margin() const noexcept { return margin_; }

  // Arc from a to b: straight on attempt 0, through a jittered midpoint
  // afterwards.
  std::vector<PlanePoint> transversal(int attempt) const;
  double reach(int attempt) const;

private:
  Isotopy I_;
  PlanePoint a_, b_;
  LinkingConfig cfg_;
  PlaneIsotopy N_;
  int S_;
  std::vector<double> u_;
  std::vector<std::complex<double>> lam_;
  std::vector<PlanePoint> fa_;
  double lam_min_ = 1.0;
  double margin_;
};

// Lifted orbit segment from one return to a later one, sampled on the
// frame grid; shared by every pair frame of the same isotopy.
struct OrbitChunk {
  int S = 0;
  std::vector<double> u;
  std::vector<PlanePoint> p;  // p[k] = F^k of the start lift
  std::vector<PlanePoint> F;  // F_{u_i}(p[k]), i = 1..S-1, row k
  PlanePoint target;          // lift of the start point closing the chunk

  long steps() const noexcept { return static_cast<long>(p.size()) - 1; }
  void reset(PlanePoint start);
  void step(const Isotopy& I);
  void close(const Torus& T);
};

OrbitChunk make_chunk(const Isotopy& I, int samples_per_piece);

// γ ∧ Γ for one closed-up chunk summed over the relevant lifts.
long chunk_linking(const PairFrame& frame, const OrbitChunk& chunk);

// L_n: signed intersection of the arc a→b with the closed-up normalized
// orbit family over n returns to U.
long birkhoff_L(const Isotopy& I, PlanePoint a, PlanePoint b, TorusPoint z, const ReturnDisk& U, int n,
                const LinkingConfig& cfg = {});
long birkhoff_L(const PairFrame& frame, TorusPoint z, const ReturnDisk& U, int n);
// L_1 at Φ^j z for j < n.
std::vector<long> birkhoff_L_terms(const PairFrame& frame, TorusPoint z, const ReturnDisk& U, int n);

// Independent route: winding(a) - winding(b) of each closed normalized lift
// loop, summed over a fixed block of deck shells. Requires the n-return
// orbit to close in the cover.
long winding_difference_oracle(const Isotopy& I, PlanePoint a, PlanePoint b, TorusPoint z, const ReturnDisk& U,
                               int n, const LinkingConfig& cfg = {}, int shells = 3);

struct ConvergenceConfig {
  int window = 8;
  double delta_periodic = 1e-6;
  double delta = 1e-3;
  long cap = 1'000'000;
  double periodic_tol = 1e-9;
  // An in-disk iterate is a return too; chunks that never leave U are cut
  // at this length so slow drift inside U does not stall the estimate.
  long max_chunk = 16;
};

struct RecurrentLinking {
  double value = 0.0;
  std::optional<Rational> exact;  // periodic orbits
  double spread = 0.0;
  long iterations = 0;
  long returns = 0;
  long estimates = 0;
  bool converged = false;
};

RecurrentLinking recurrent_linking(const Isotopy& I, PlanePoint a, PlanePoint b, TorusPoint z, const ReturnDisk& U,
                                   const ConvergenceConfig& conv = {}, const LinkingConfig& cfg = {});

// One orbit walk serving several pairs of the same isotopy. With strict
// set, failure to converge throws NotConverged; otherwise the best
// estimate is returned with converged = false.
std::vector<RecurrentLinking> recurrent_linking_multi(const std::vector<const PairFrame*>& frames, TorusPoint z,
                                                      const ReturnDisk& U, const ConvergenceConfig& conv,
                                                      bool strict = true);

struct RotationEstimate {
  PlanePoint value;
  std::optional<std::array<Rational, 2>> exact;  // value = L * exact for periodic orbits
  double spread = 0.0;
  long iterations = 0;
  long returns = 0;
  bool converged = false;
};

RotationEstimate rotation_vector_point(const Isotopy& I, TorusPoint z, const ReturnDisk& U,
                                       const ConvergenceConfig& conv = {}, bool strict = true);

} // namespace tact
