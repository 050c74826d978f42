#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sympack/coprime_arith.hpp"
#include "sympack/scalar.hpp"

namespace sympack {

/// E_a(r) = { z in C^n : pi * sum_i a_i |z_i|^2 <= r }.
struct Ellipsoid {
  std::vector<Scalar> weights;
  Scalar capacity;

  int complex_dimension() const { return static_cast<int>(weights.size()); }
  void validate() const;  // weights > 0, capacity >= 0

  /// The weights as a CoprimeVector when they are exact pairwise coprime integers.
  std::optional<CoprimeVector> simple_weights() const;
};

enum class VolumeConvention {
  kLebesgue,  // Lebesgue measure in R^{2n}: r^n / (n! <a>)
  kTopPower,  // integral of omega^n: r^n / <a>
};

std::string_view to_string(VolumeConvention c);

Scalar ellipsoid_volume_closed_form(const Ellipsoid& e, VolumeConvention convention);

struct VolumeEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  std::uint64_t seed = 0;
  VolumeConvention convention = VolumeConvention::kLebesgue;
};

inline constexpr std::uint64_t kMinMonteCarloSamples = 10'000;

/// Rejection sampling over the box prod_i { |Re z_i|, |Im z_i| <= sqrt(r/(pi a_i)) }.
/// Samples are drawn in fixed-size blocks, each from its own seeded stream,
/// so any number of workers gives the same hit count as one.
VolumeEstimate ellipsoid_volume_monte_carlo(const Ellipsoid& e, std::uint64_t samples,
                                            std::uint64_t seed, unsigned workers = 1);

/// Sum of closed-form volumes. Requires a nonempty list.
Scalar total_packing_volume(std::span<const Ellipsoid> ellipsoids, VolumeConvention convention);

}  // namespace sympack
