#include "tact/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "tact/error.hpp"
#include "tact/reduce.hpp"

#if defined(TACT_HAVE_OPENMP)
#include <omp.h>
#endif

namespace tact {

TorusPoint cell_center(const Torus& T, int n, long cell) {
  const double h = T.modulus() / n;
  const long i = cell / n, j = cell % n;
  return {(static_cast<double>(i) + 0.5) * h, (static_cast<double>(j) + 0.5) * h};
}

namespace {

void eval_cell(const Torus& T, int n, int k, const CellIntegrand& f, long c, CellField& out) {
  std::span<double> slot(out.values.data() + c * k, static_cast<std::size_t>(k));
  out.ok[static_cast<std::size_t>(c)] = f(cell_center(T, n, c), slot) ? 1 : 0;
}

CellField blank(int n, int k) {
  CellField f;
  f.n = n;
  f.k = k;
  f.values.assign(static_cast<std::size_t>(n) * n * k, 0.0);
  f.ok.assign(static_cast<std::size_t>(n) * n, 1);
  return f;
}

// Runs body(i) for i in [0, count), in parallel when asked; the first
// exception by index is rethrown afterwards.
template <class Body>
void run_indexed(long count, bool parallel, int threads, Body&& body) {
  if (!parallel) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
#if defined(TACT_HAVE_OPENMP)
  long first_bad = count;
  std::exception_ptr err;
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(nt)
  for (long i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(tact_quadrature_error)
      if (i < first_bad) {
        first_bad = i;
        err = std::current_exception();
      }
    }
  }
  if (err) std::rethrow_exception(err);
#else
  (void)threads;
  for (long i = 0; i < count; ++i) body(i);
#endif
}

struct Level {
  std::vector<double> value;
  std::vector<double> sigma;
  long jumps = 0;
  long unconverged = 0;
  double unconverged_mass = 0.0;
  std::vector<double> unconverged_err;
};

Level integrate_level(const Torus& T, const Density& density, int n, int k, const CellIntegrand& f,
                      const QuadratureConfig& cfg) {
  const long cells = static_cast<long>(n) * n;
  const double h = T.modulus() / n;
  const double area = h * h;
  const CellField field = cfg.parallel ? sample_cells_parallel(T, n, k, f, cfg.threads) : sample_cells_serial(T, n, k, f);

  std::vector<double> w(static_cast<std::size_t>(cells));
  for (long c = 0; c < cells; ++c) w[static_cast<std::size_t>(c)] = density(cell_center(T, n, c)) * area;

  // Weighted cell values g = density * f; jump cells differ from a
  // neighbour by more than the threshold.
  auto g = [&](long c, int comp) {
    return field.values[static_cast<std::size_t>(c * k + comp)] * w[static_cast<std::size_t>(c)] / area;
  };
  std::vector<long> jump;
  for (long c = 0; c < cells; ++c) {
    const long i = c / n, j = c % n;
    const long nb[4] = {((i + 1) % n) * n + j, ((i + n - 1) % n) * n + j, i * n + (j + 1) % n, i * n + (j + n - 1) % n};
    bool flag = false;
    for (int comp = 0; comp < k && !flag; ++comp)
      for (long d : nb)
        if (std::abs(g(c, comp) - g(d, comp)) > cfg.jump_threshold) flag = true;
    if (flag) jump.push_back(c);
  }

  std::vector<double> contrib(static_cast<std::size_t>(cells) * k);
  for (long c = 0; c < cells; ++c)
    for (int comp = 0; comp < k; ++comp)
      contrib[static_cast<std::size_t>(comp) * cells + c] = field.values[static_cast<std::size_t>(c * k + comp)] *
                                                            w[static_cast<std::size_t>(c)];
  std::vector<unsigned char> ok(field.ok);

  const int s = std::max(1, cfg.supersample);
  const long J = static_cast<long>(jump.size());
  std::vector<double> jump_value(static_cast<std::size_t>(J) * k, 0.0);
  std::vector<double> jump_spread(static_cast<std::size_t>(J) * k, 0.0);
  std::vector<unsigned char> jump_ok(static_cast<std::size_t>(J), 1);
  if (s > 1 && J > 0) {
    run_indexed(J, cfg.parallel, cfg.threads, [&](long q) {
      const long c = jump[static_cast<std::size_t>(q)];
      const long i = c / n, j = c % n;
      std::vector<double> buf(static_cast<std::size_t>(k));
      std::vector<double> lo(static_cast<std::size_t>(k), INFINITY), hi(static_cast<std::size_t>(k), -INFINITY);
      std::vector<double> acc(static_cast<std::size_t>(s) * s * k);
      bool all_ok = true;
      for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b) {
          const TorusPoint z{(static_cast<double>(i) + (a + 0.5) / s) * h, (static_cast<double>(j) + (b + 0.5) / s) * h};
          const double dz = density(z);
          if (!f(z, buf)) all_ok = false;
          for (int comp = 0; comp < k; ++comp) {
            const double v = dz * buf[static_cast<std::size_t>(comp)];
            acc[static_cast<std::size_t>(comp) * s * s + static_cast<std::size_t>(a * s + b)] = v;
            lo[static_cast<std::size_t>(comp)] = std::min(lo[static_cast<std::size_t>(comp)], v);
            hi[static_cast<std::size_t>(comp)] = std::max(hi[static_cast<std::size_t>(comp)], v);
          }
        }
      for (int comp = 0; comp < k; ++comp) {
        const std::span<const double> part(acc.data() + static_cast<std::size_t>(comp) * s * s,
                                           static_cast<std::size_t>(s) * s);
        jump_value[static_cast<std::size_t>(q * k + comp)] = area * pairwise_sum(part) / (s * s);
        jump_spread[static_cast<std::size_t>(q * k + comp)] = hi[static_cast<std::size_t>(comp)] - lo[static_cast<std::size_t>(comp)];
      }
      jump_ok[static_cast<std::size_t>(q)] = all_ok ? 1 : 0;
    });
  }

  Level lv;
  lv.jumps = J;
  lv.sigma.assign(static_cast<std::size_t>(k), 0.0);
  std::vector<double> sig2(static_cast<std::size_t>(k), 0.0);
  for (long q = 0; q < J; ++q) {
    const long c = jump[static_cast<std::size_t>(q)];
    for (int comp = 0; comp < k; ++comp) {
      if (s > 1) contrib[static_cast<std::size_t>(comp) * cells + c] = jump_value[static_cast<std::size_t>(q * k + comp)];
      const double d = (s > 1 ? jump_spread[static_cast<std::size_t>(q * k + comp)]
                              : std::abs(contrib[static_cast<std::size_t>(comp) * cells + c]) / area) / s;
      sig2[static_cast<std::size_t>(comp)] += d * d;
    }
    if (s > 1 && !jump_ok[static_cast<std::size_t>(q)]) ok[static_cast<std::size_t>(c)] = 0;
  }
  lv.unconverged_err.assign(static_cast<std::size_t>(k), 0.0);
  for (long c = 0; c < cells; ++c) {
    if (ok[static_cast<std::size_t>(c)]) continue;
    ++lv.unconverged;
    lv.unconverged_mass += w[static_cast<std::size_t>(c)];
    for (int comp = 0; comp < k; ++comp)
      lv.unconverged_err[static_cast<std::size_t>(comp)] +=
          w[static_cast<std::size_t>(c)] * std::max(1.0, std::abs(field.values[static_cast<std::size_t>(c * k + comp)]));
  }
  lv.value.resize(static_cast<std::size_t>(k));
  for (int comp = 0; comp < k; ++comp) {
    lv.value[static_cast<std::size_t>(comp)] = pairwise_sum(
        std::span<const double>(contrib.data() + static_cast<std::size_t>(comp) * cells, static_cast<std::size_t>(cells)));
    lv.sigma[static_cast<std::size_t>(comp)] = area * std::sqrt(sig2[static_cast<std::size_t>(comp)]);
  }
  return lv;
}

} // namespace

CellField sample_cells_serial(const Torus& T, int n, int k, const CellIntegrand& f) {
  CellField out = blank(n, k);
  const long cells = static_cast<long>(n) * n;
  for (long c = 0; c < cells; ++c) eval_cell(T, n, k, f, c, out);
  return out;
}

CellField sample_cells_parallel(const Torus& T, int n, int k, const CellIntegrand& f, int threads) {
  CellField out = blank(n, k);
  run_indexed(static_cast<long>(n) * n, true, threads, [&](long c) { eval_cell(T, n, k, f, c, out); });
  return out;
}

QuadratureResult integrate_grid(const Torus& T, const Density& density, int k, const CellIntegrand& f,
                                const QuadratureConfig& cfg) {
  if (cfg.grid_n < 2 || (cfg.richardson && cfg.grid_n < 4))
    fail(ErrorKind::ConfigError, "quadrature grid too small");
  const Level fine = integrate_level(T, density, cfg.grid_n, k, f, cfg);
  QuadratureResult r;
  r.cells = static_cast<long>(cfg.grid_n) * cfg.grid_n;
  r.jump_cells = fine.jumps;
  r.unconverged_cells = fine.unconverged;
  r.unconverged_mass = fine.unconverged_mass;
  r.value = fine.value;
  r.error.resize(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c)
    r.error[static_cast<std::size_t>(c)] = fine.sigma[static_cast<std::size_t>(c)] + fine.unconverged_err[static_cast<std::size_t>(c)];

  double mass = 0.0;
  {
    const double area = std::pow(T.modulus() / cfg.grid_n, 2);
    std::vector<double> w(static_cast<std::size_t>(r.cells));
    for (long c = 0; c < r.cells; ++c) w[static_cast<std::size_t>(c)] = density(cell_center(T, cfg.grid_n, c)) * area;
    mass = pairwise_sum(w);
  }
  if (mass > 0.0 && fine.unconverged_mass > cfg.max_unconverged_fraction * mass)
    fail(ErrorKind::QuadratureFailure, std::to_string(fine.unconverged) + " cells carrying mass fraction " +
                                           std::to_string(fine.unconverged_mass / mass) + " did not converge");

  if (cfg.richardson) {
    QuadratureConfig half = cfg;
    half.grid_n = cfg.grid_n / 2;
    const Level coarse = integrate_level(T, density, half.grid_n, k, f, half);
    r.coarse = coarse.value;
    for (int c = 0; c < k; ++c)
      r.error[static_cast<std::size_t>(c)] += std::abs(fine.value[static_cast<std::size_t>(c)] - coarse.value[static_cast<std::size_t>(c)]);
  }
  return r;
}

} // namespace tact
