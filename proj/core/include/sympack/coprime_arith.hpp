#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sympack/scalar.hpp"

namespace sympack {

/// True iff gcd(v[i], v[j]) == 1 for every i != j.
/// Throws InvalidInput for an empty list or an entry < 1.
bool is_pairwise_coprime(std::span<const BigInt> v);

/// Ordered tuple of pairwise coprime positive integers (a weight vector).
class CoprimeVector {
 public:
  explicit CoprimeVector(std::vector<BigInt> entries);
  CoprimeVector(std::initializer_list<long> entries);

  const std::vector<BigInt>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const BigInt& operator[](std::size_t i) const { return entries_[i]; }

  friend bool operator==(const CoprimeVector&, const CoprimeVector&) = default;

 private:
  std::vector<BigInt> entries_;
};

/// Product of the weights.
BigInt weight_product(const CoprimeVector& v);

/// Deterministic primality test. Miller-Rabin with the first thirteen prime
/// bases is a proof below 3317044064679887385961981; larger inputs raise
/// ResourceLimit rather than returning a probabilistic answer.
bool is_prime(const BigInt& n);

/// Smallest prime p with lo < p < hi, if any. Requires lo < hi.
std::optional<BigInt> prime_in_interval(const BigInt& lo, const BigInt& hi);

/// p_i / N approximates x_i with every p_i prime and the p_i pairwise distinct.
struct PrimeApproximation {
  BigInt denominator;
  std::vector<BigInt> primes;
  Rational max_error;  // max_i |primes[i]/denominator - x_i|, exact
  double max_error_value = 0.0;
};

enum class ApproxStrategy {
  /// Minimal-denominator scan first, rational-anchor windows on overflow.
  kAuto,
  /// Scan N = 1, 2, ... over the full tolerance windows; returns the
  /// smallest valid N and the lexicographically smallest prime tuple.
  kMinimalDenominator,
  /// Anchor at a decimal vector y with distinct entries, |y - x| <= eps/2,
  /// and search primes in (N y_i, N y_i (1 + eta)] over multiples of y's
  /// common denominator, eta = eps / (2 max y).
  kAnchoredWindows,
};

struct ApproxOptions {
  ApproxStrategy strategy = ApproxStrategy::kAuto;
  std::uint64_t max_denominator = 2'000'000;  // cap for the minimal scan
  std::uint64_t max_anchor_rounds = 1'000'000;
};

/// Approximates a positive vector by a prime vector over a common
/// denominator within `epsilon` in the max norm. Deterministic.
/// Throws InvalidInput on non-positive data, ResourceLimit when the search
/// budget runs out (the message carries the largest N tried).
PrimeApproximation approximate_by_primes(std::span<const Rational> x, const Rational& epsilon,
                                         const ApproxOptions& options = {});
PrimeApproximation approximate_by_primes(std::span<const double> x, double epsilon,
                                         const ApproxOptions& options = {});

}  // namespace sympack
