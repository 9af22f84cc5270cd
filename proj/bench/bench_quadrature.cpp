// Serial reference kernel against the OpenMP kernel on the twist action
// integrand.

#include <benchmark/benchmark.h>

#include <vector>

#include "tact/action.hpp"

namespace {

using namespace tact;

const Torus& torus() {
  static const Torus T(4.0);
  return T;
}

const Isotopy& twist() {
  static const Isotopy I = make_twist(torus(), {2.0, 2.0}, RadialProfile{});
  return I;
}

CellIntegrand integrand() {
  return [](TorusPoint z, std::span<double> out) {
    out[0] = action_integrand(twist(), {2.0, 2.0}, {3.5, 2.0}, z);
    return true;
  };
}

void BM_serial(benchmark::State& state) {
  const CellIntegrand f = integrand();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_cells_serial(torus(), n, 1, f));
  state.SetItemsProcessed(state.iterations() * n * n);
}

void BM_parallel(benchmark::State& state) {
  const CellIntegrand f = integrand();
  const int n = static_cast<int>(state.range(0));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(sample_cells_parallel(torus(), n, 1, f, threads));
  state.SetItemsProcessed(state.iterations() * n * n);
}

BENCHMARK(BM_serial)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_parallel)->Args({16, 1})->Args({32, 1})->Args({32, 2})->Args({32, 4})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
