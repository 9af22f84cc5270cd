#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tact/cover.hpp"

namespace tact {

struct QuadratureConfig {
  int grid_n = 128;
  bool richardson = true;        // also integrate on n/2 for the error bar
  double jump_threshold = 0.25;  // neighbour difference flagging a jump cell
  int supersample = 4;           // k×k resampling of jump cells
  bool parallel = true;
  int threads = 0;               // 0 leaves the OpenMP default
  double max_unconverged_fraction = 0.01;
};

// Writes k components at z. Returns false when the values are only a best
// estimate (e.g. an orbit average that did not settle).
using CellIntegrand = std::function<bool(TorusPoint z, std::span<double> out)>;
using Density = std::function<double(TorusPoint)>;

struct CellField {
  int n = 0;
  int k = 0;
  std::vector<double> values;      // (cell * k + component), cells row-major in x
  std::vector<unsigned char> ok;
};

TorusPoint cell_center(const Torus& T, int n, long cell);

// Reference kernel.
CellField sample_cells_serial(const Torus& T, int n, int k, const CellIntegrand& f);
// Same values, one cell per task; identical output for any thread count.
CellField sample_cells_parallel(const Torus& T, int n, int k, const CellIntegrand& f, int threads = 0);

struct QuadratureResult {
  std::vector<double> value;
  std::vector<double> error;
  std::vector<double> coarse;  // n/2 estimate when richardson is on
  long cells = 0;
  long jump_cells = 0;
  long unconverged_cells = 0;
  double unconverged_mass = 0.0;
};

// Cell-centre rule with supersampled jump cells. The error bar is
// |I_n - I_{n/2}| plus a jump-cell term h²·sqrt(Σ (D_c / k)²), D_c being
// the spread of the supersamples in cell c, plus the mass of unconverged
// cells times max(1, |value|).
QuadratureResult integrate_grid(const Torus& T, const Density& density, int k, const CellIntegrand& f,
                                const QuadratureConfig& cfg);

} // namespace tact
