#include <benchmark/benchmark.h>

#include "sympack/psh_lab.hpp"

using namespace sympack::psh;

static void BM_RegularizedMax(benchmark::State& state) {
  double t = 0;
  regularized_max(0.0, 0.0, 0.1);  // builds the tail table outside the timed loop
  for (auto _ : state) {
    benchmark::DoNotOptimize(regularized_max(t, 0.0, 0.1));
    t = t > 0.1 ? -0.1 : t + 1e-4;
  }
}
BENCHMARK(BM_RegularizedMax);

static void BM_ComplexHessian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto f = fields::log_squared_norm(n, 1);
  Point z(static_cast<std::size_t>(n), {0.3, 0.1});
  for (auto _ : state) benchmark::DoNotOptimize(complex_hessian(f, z, 1e-4));
}
BENCHMARK(BM_ComplexHessian)->DenseRange(1, kMaxDimension);

static void BM_GluePotentials(benchmark::State& state) {
  auto F = fields::squared_norm(2, 1);
  auto G = fields::log_squared_norm(2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(glue_potentials(F, G, 1, 0.01));
  state.SetLabel("n = 2");
}
BENCHMARK(BM_GluePotentials)->Unit(benchmark::kMillisecond);

static void BM_CertifyGlued(benchmark::State& state) {
  auto g = glue_potentials(fields::squared_norm(2, 1), fields::log_squared_norm(2, 1), 1, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(certify_strict_psh(g.field, 10'000, 0.0, 1));
}
BENCHMARK(BM_CertifyGlued)->Unit(benchmark::kMillisecond);
