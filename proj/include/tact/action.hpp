#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tact/linking.hpp"
#include "tact/measure.hpp"
#include "tact/orbits.hpp"
#include "tact/quadrature.hpp"

namespace tact {

struct ActionConfig {
  QuadratureConfig quad;
  ConvergenceConfig conv{8, 1e-6, 1e-3, 200000, 1e-9};
  LinkingConfig link;
  FixedLinkingConfig fixed;
  double disk_radius = -1.0;    // default return disk radius; negative means L/32
  double fixed_tol = 1e-9;
  double rho_zero_tol = 1e-6;   // times L, per coordinate
  int rho_grid = 32;            // grid for the ρ(μ) gate on grid measures
  double deck_tol = 1e-3;       // |i_μ(a, α·a)| bound for the L_μ quotient
  bool enforce_cocycle = true;
};

struct RotationMeasure {
  PlanePoint integral;  // ∫ ρ dμ
  PlanePoint mean;      // ∫ ρ dμ / μ(M)
  PlanePoint error;     // on the mean
  double mass = 0.0;
  long unconverged = 0;
};

RotationMeasure rotation_vector_measure(const Isotopy& I, const Measure& mu, const ActionConfig& cfg = {});

struct PairValue {
  double value = 0.0;
  double error = 0.0;
};

// i_μ for an explicit list of ordered lift pairs, all from one pass over
// the measure.
struct PairwiseAction {
  std::vector<PlanePoint> lifts;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<PairValue> values;
  long unconverged = 0;
  long jump_cells = 0;
  long cells = 0;
};

PairwiseAction action_pairs(const Isotopy& I, const Measure& mu, const std::vector<PlanePoint>& lifts,
                            const std::vector<std::pair<std::size_t, std::size_t>>& pairs, const ActionConfig& cfg = {});

PairValue action_difference(const Isotopy& I, const Measure& mu, PlanePoint a, PlanePoint b,
                            const ActionConfig& cfg = {});

// The integrand i(a, b, z) at a single point, as used by the quadrature.
double action_integrand(const Isotopy& I, PlanePoint a, PlanePoint b, TorusPoint z, const ActionConfig& cfg = {});

struct LabeledLift {
  std::string label;
  PlanePoint lift;
};

struct ActionReport {
  std::vector<LabeledLift> lifts;
  std::vector<double> imu;        // n×n, imu[i*n+j] = i_μ(lift i, lift j)
  std::vector<double> imu_error;
  std::vector<double> l;          // anchored at the first lift
  std::optional<std::vector<double>> L;  // on projections; set when ρ(μ)=0
  std::vector<double> spectrum;   // sorted distinct values
  double width = 0.0;
  double cocycle_residual = 0.0;
  double reconstruction_residual = 0.0;
  double quad_error = 0.0;        // largest pairwise error bar
  PlanePoint rho;
  bool rho_zero = false;
  std::vector<double> deck_check;  // i_μ(first, first + α) for α = (1,0), (0,1)
  long unconverged = 0;

  double at(std::size_t i, std::size_t j) const { return imu[i * lifts.size() + j]; }
};

ActionReport solve_action_function(const Isotopy& I, const Measure& mu, const std::vector<LabeledLift>& lifts,
                                   const ActionConfig& cfg = {});

struct HamiltonianData {
  std::function<double(double, TorusPoint)> H;
  std::string convention;
};

// H(r) = -2π ∫_r^R s β(s) ds inside the support, 0 outside, under dH = -ι_X ω.
HamiltonianData twist_hamiltonian(const Torus& T, TorusPoint center, RadialProfile profile);

// ∫_{D_x} ω - ∫_0^1 H(t, F_t(x)) dt, the area term taken as the signed
// area enclosed by the loop t -> F_t(x).
double classical_action(const HamiltonianData& H, const Isotopy& I, TorusPoint x);

struct IterationEntry {
  int q = 1;
  PairValue value;
  double ratio = 0.0;
  double deviation = 0.0;  // |ratio - q| / q
  bool pass = false;
};

struct IterationReport {
  PairValue base;
  std::vector<IterationEntry> entries;
  bool pass() const;
};

IterationReport verify_iteration(const Isotopy& I, const Measure& mu, PlanePoint a, PlanePoint b,
                                 const std::vector<int>& qs, const ActionConfig& cfg = {});

struct SchwarzReport {
  PlanePoint rho;
  bool rho_zero = false;
  int fixed_points = 0;
  int contractible = 0;
  bool identity = false;
  bool hypothesis_violated = false;
  std::vector<double> widths;        // width(F^n), n = 1..
  std::vector<double> width_errors;
  double slope = 0.0;
  bool nonconstant = false;
  std::string verdict;
};

// Lifts default to one contractible representative per fixed component.
SchwarzReport verify_schwarz(const Isotopy& I, const Measure& mu, std::vector<LabeledLift> lifts, int n_max = 5,
                             const ActionConfig& cfg = {}, int fixed_grid = 64);

struct KacReport {
  double lhs = 0.0;  // ∫_U τ dμ
  double rhs = 0.0;  // μ(∪ F^k U)
  long atoms_in_disk = 0;
  bool pass = false;
};

KacReport kac_check(const Isotopy& I, const Measure& mu, const ReturnDisk& U, double tol = 1e-12);

} // namespace tact
