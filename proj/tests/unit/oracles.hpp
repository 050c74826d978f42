#pragma once

// Independent reference computations used only by the tests.

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "sympack/blowup_model.hpp"
#include "sympack/scalar.hpp"

namespace oracle {

inline bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// next_prime[k] = smallest prime > k, for k < limit.
inline std::vector<std::uint64_t> next_prime_table(std::uint64_t limit) {
  std::vector<bool> composite(limit + 200, false);
  for (std::uint64_t p = 2; p * p < composite.size(); ++p)
    if (!composite[p])
      for (std::uint64_t m = p * p; m < composite.size(); m += p) composite[m] = true;
  std::vector<std::uint64_t> next(limit);
  std::uint64_t upcoming = 0;
  for (std::uint64_t k = composite.size() - 1; k-- > 0;) {
    if (k + 1 >= 2 && !composite[k + 1]) upcoming = k + 1;
    if (k < limit) next[k] = upcoming;
  }
  return next;
}

/// Pairwise coprime weights drawn from [1, max_entry].
inline std::vector<sympack::BigInt> random_coprime(std::mt19937_64& rng, std::size_t length,
                                                   long max_entry) {
  std::uniform_int_distribution<long> pick(1, max_entry);
  std::vector<long> out;
  while (out.size() < length) {
    long c = pick(rng);
    bool ok = true;
    for (long e : out) ok = ok && std::gcd(e, c) == 1;
    if (ok) out.push_back(c);
  }
  return {out.begin(), out.end()};
}

/// <(s P - sum c_i e_i)^n, [M~]> by expanding all (k+1)^n words in the
/// relation algebra P^n = V, P e_i = 0, e_i e_j = 0 (i != j), e_i^n given.
inline sympack::Rational expand_top_power(const sympack::Rational& s, const sympack::Rational& V,
                                          const std::vector<sympack::Rational>& c,
                                          const std::vector<sympack::Rational>& e_top, int n) {
  const std::size_t k = c.size();
  std::vector<std::size_t> word(static_cast<std::size_t>(n), 0);
  sympack::Rational total = 0;
  while (true) {
    sympack::Rational coeff = 1;
    for (std::size_t letter : word) coeff *= letter == 0 ? s : sympack::Rational(-c[letter - 1]);
    bool all_same = true;
    for (std::size_t letter : word) all_same = all_same && letter == word[0];
    if (all_same) total += coeff * (word[0] == 0 ? V : e_top[word[0] - 1]);
    std::size_t pos = 0;
    while (pos < word.size() && ++word[pos] == k + 1) word[pos++] = 0;
    if (pos == word.size()) break;
  }
  return total;
}

}  // namespace oracle
