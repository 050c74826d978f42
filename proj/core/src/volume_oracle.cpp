#include "sympack/volume_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "sympack/errors.hpp"

namespace sympack {

namespace {

constexpr std::uint64_t kBlockSize = 4096;

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t count_block_hits(const std::vector<double>& weights, const std::vector<double>& radius,
                               double capacity, std::uint64_t seed, std::uint64_t block,
                               std::uint64_t count) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  std::mt19937_64 rng(seq);
  std::uint64_t hits = 0;
  const std::size_t n = weights.size();
  for (std::uint64_t s = 0; s < count; ++s) {
    double h = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double x = radius[i] * (2.0 * unit_uniform(rng) - 1.0);
      double y = radius[i] * (2.0 * unit_uniform(rng) - 1.0);
      h += weights[i] * (x * x + y * y);
    }
    if (std::numbers::pi * h <= capacity) ++hits;
  }
  return hits;
}

}  // namespace

void Ellipsoid::validate() const {
  if (weights.empty()) throw InvalidInput("ellipsoid needs at least one weight");
  for (const auto& w : weights)
    if (w.sign() <= 0) throw InvalidInput("ellipsoid weights must be positive");
  if (capacity.sign() < 0) throw InvalidInput("ellipsoid capacity must be nonnegative");
}

std::optional<CoprimeVector> Ellipsoid::simple_weights() const {
  std::vector<BigInt> ints;
  for (const auto& w : weights) {
    if (!w.is_exact() || w.rational().get_den() != 1 || w.sign() <= 0) return std::nullopt;
    ints.push_back(w.rational().get_num());
  }
  if (ints.empty() || !is_pairwise_coprime(ints)) return std::nullopt;
  return CoprimeVector(std::move(ints));
}

std::string_view to_string(VolumeConvention c) {
  return c == VolumeConvention::kLebesgue ? "LEBESGUE" : "TOP_POWER";
}

Scalar ellipsoid_volume_closed_form(const Ellipsoid& e, VolumeConvention convention) {
  e.validate();
  const auto n = static_cast<unsigned>(e.complex_dimension());
  Scalar weight_product = 1;
  for (const auto& w : e.weights) weight_product *= w;
  Scalar top = e.capacity.pow(n) / weight_product;
  if (convention == VolumeConvention::kTopPower) return top;
  BigInt factorial;
  mpz_fac_ui(factorial.get_mpz_t(), n);
  return top / Scalar(factorial);
}

VolumeEstimate ellipsoid_volume_monte_carlo(const Ellipsoid& e, std::uint64_t samples,
                                            std::uint64_t seed, unsigned workers) {
  e.validate();
  if (samples < kMinMonteCarloSamples)
    throw InvalidInput("Monte Carlo volume needs at least 10^4 samples");
  VolumeEstimate out;
  out.samples = samples;
  out.seed = seed;
  out.convention = VolumeConvention::kLebesgue;

  const double capacity = e.capacity.to_double();
  std::vector<double> weights, radius;
  double box = 1.0;
  for (const auto& w : e.weights) {
    weights.push_back(w.to_double());
    double rho = std::sqrt(capacity / (std::numbers::pi * weights.back()));
    radius.push_back(rho);
    box *= 4.0 * rho * rho;
  }
  if (capacity == 0.0) return out;

  const std::uint64_t blocks = (samples + kBlockSize - 1) / kBlockSize;
  auto block_count = [&](std::uint64_t b) {
    return std::min(kBlockSize, samples - b * kBlockSize);
  };
  workers = std::max(1u, workers);
  std::vector<std::uint64_t> partial(workers, 0);
  auto run = [&](unsigned w) {
    for (std::uint64_t b = w; b < blocks; b += workers)
      partial[w] += count_block_hits(weights, radius, capacity, seed, b, block_count(b));
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  for (auto h : partial) out.hits += h;

  const double p = static_cast<double>(out.hits) / static_cast<double>(samples);
  out.value = box * p;
  out.standard_error = box * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return out;
}

Scalar total_packing_volume(std::span<const Ellipsoid> ellipsoids, VolumeConvention convention) {
  if (ellipsoids.empty()) throw InvalidInput("total_packing_volume needs at least one ellipsoid");
  Scalar total = 0;
  for (const auto& e : ellipsoids) total += ellipsoid_volume_closed_form(e, convention);
  return total;
}

}  // namespace sympack
