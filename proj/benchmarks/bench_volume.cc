#include <benchmark/benchmark.h>

#include <cmath>

#include "sympack/packing_checker.hpp"
#include "sympack/volume_oracle.hpp"

using namespace sympack;

static void BM_MonteCarloVolume(benchmark::State& state) {
  Ellipsoid e{{Scalar(2), Scalar(3), Scalar(5)}, Scalar(1)};
  const auto workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ellipsoid_volume_monte_carlo(e, 1'000'000, 7, workers));
  state.SetItemsProcessed(state.iterations() * 1'000'000);
}
BENCHMARK(BM_MonteCarloVolume)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

static void BM_SimpleEnclosure(benchmark::State& state) {
  Ellipsoid e{{Scalar(1.0), Scalar(1.4142135623730951), Scalar(1.7320508075688772)}, Scalar(1)};
  const double eps = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(simple_enclosure(e, eps));
}
BENCHMARK(BM_SimpleEnclosure)->DenseRange(1, 4);

static void BM_CheckPacking(benchmark::State& state) {
  ManifoldModel m{2, Scalar(4), {Assumption::kCampanaSimple, Assumption::kKahler}};
  std::vector<Ellipsoid> es;
  for (int i = 0; i < state.range(0); ++i)
    es.push_back({{Scalar(1.0), Scalar(1.0 + 0.1 * i + 0.01)}, Scalar(0.3)});
  for (auto _ : state) benchmark::DoNotOptimize(check_packing(m, es, 1e-3));
}
BENCHMARK(BM_CheckPacking)->Arg(1)->Arg(8)->Arg(32);
