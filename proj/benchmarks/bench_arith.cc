#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "sympack/blowup_model.hpp"
#include "sympack/coprime_arith.hpp"
#include "sympack/wps_cohomology.hpp"

using namespace sympack;

static void BM_IsPrime64(benchmark::State& state) {
  BigInt n("2305843009213693951");
  for (auto _ : state) benchmark::DoNotOptimize(is_prime(n));
}
BENCHMARK(BM_IsPrime64);

static void BM_PrimeInInterval(benchmark::State& state) {
  BigInt lo = BigInt(1) << static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(prime_in_interval(lo, lo + 10'000));
}
BENCHMARK(BM_PrimeInInterval)->Arg(20)->Arg(40)->Arg(60);

static void BM_ApproximateByPrimes(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  std::vector<double> x(static_cast<std::size_t>(state.range(0)));
  for (auto& v : x) v = coord(rng);
  for (auto _ : state) benchmark::DoNotOptimize(approximate_by_primes(x, 1e-3));
}
BENCHMARK(BM_ApproximateByPrimes)->DenseRange(1, 6);

static void BM_AnchoredWindows(benchmark::State& state) {
  std::vector<double> x{1.0, 1.4142135623730951, 1.7320508075688772, 2.23606797749979};
  ApproxOptions opts;
  opts.strategy = ApproxStrategy::kAnchoredWindows;
  const double eps = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(approximate_by_primes(x, eps, opts));
}
BENCHMARK(BM_AnchoredWindows)->DenseRange(2, 8, 2);

static void BM_RingPower(benchmark::State& state) {
  std::vector<BigInt> w{1, 2, 3, 5, 7, 11, 13};
  w.resize(static_cast<std::size_t>(state.range(0)) + 1);
  WpsSpace s{CoprimeVector(w)};
  auto a1 = WpsRingElement::generator(s, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ring_power(a1, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_RingPower)->DenseRange(2, 6, 2);

static void BM_TopIntersection(benchmark::State& state) {
  ManifoldModel m{3, Scalar(Rational(7, 2)), {}};
  BlowupClass cls;
  for (int i = 0; i < state.range(0); ++i) cls.exceptional.push_back({CoprimeVector{2, 3, 5}, Scalar(Rational(1, 7))});
  for (auto _ : state) benchmark::DoNotOptimize(top_intersection(cls, m));
}
BENCHMARK(BM_TopIntersection)->Arg(1)->Arg(10)->Arg(100);
