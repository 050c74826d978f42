#include "sympack/coprime_arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sympack/errors.hpp"

namespace sympack {

namespace {

constexpr std::uint64_t kSieveLimit = std::uint64_t{1} << 24;

// Odd-only sieve: bit k stands for 2k+1.
const std::vector<bool>& small_sieve() {
  static const std::vector<bool> sieve = [] {
    std::vector<bool> odd_prime(kSieveLimit / 2, true);
    odd_prime[0] = false;  // 1
    for (std::uint64_t p = 3; p * p < kSieveLimit; p += 2) {
      if (!odd_prime[p / 2]) continue;
      for (std::uint64_t m = p * p; m < kSieveLimit; m += 2 * p) odd_prime[m / 2] = false;
    }
    return odd_prime;
  }();
  return sieve;
}

bool small_is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  return small_sieve()[n / 2];
}

// n < 3317044064679887385961981 is proven prime by these bases.
constexpr unsigned kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
const BigInt kDeterministicBound("3317044064679887385961981", 10);

bool miller_rabin(const BigInt& n) {
  BigInt d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  BigInt n_minus_1 = n - 1;
  BigInt x;
  for (unsigned a : kWitnesses) {
    BigInt base(a);
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) continue;
    bool composite = true;
    for (unsigned long r = 1; r < s; ++r) {
      mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
      if (x == n_minus_1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool fits_u64(const BigInt& n) { return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 63; }

std::uint64_t to_u64(const BigInt& n) {
  return static_cast<std::uint64_t>(mpz_get_ui(n.get_mpz_t()));
}

// Up to `count` primes in [lo, hi], ascending.
std::vector<BigInt> first_primes(BigInt lo, const BigInt& hi, std::size_t count) {
  std::vector<BigInt> out;
  if (lo < 2) lo = 2;
  if (fits_u64(hi) && hi < kSieveLimit) {
    for (std::uint64_t p = to_u64(lo), end = to_u64(hi); p <= end && out.size() < count; ++p)
      if (small_is_prime(p)) out.emplace_back(static_cast<unsigned long>(p));
    return out;
  }
  for (BigInt p = lo; p <= hi && out.size() < count; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

// Lexicographically smallest tuple of distinct entries, one per candidate list.
bool pick_distinct(const std::vector<std::vector<BigInt>>& candidates, std::size_t i,
                   std::vector<BigInt>& chosen) {
  if (i == candidates.size()) return true;
  for (const BigInt& p : candidates[i]) {
    if (std::find(chosen.begin(), chosen.end(), p) != chosen.end()) continue;
    chosen.push_back(p);
    if (pick_distinct(candidates, i + 1, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

BigInt ceil_mul(const BigInt& n, const Rational& q) {
  BigInt num = n * q.get_num();
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt floor_mul(const BigInt& n, const Rational& q) {
  BigInt num = n * q.get_num();
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  return r;
}

PrimeApproximation finish(std::span<const Rational> x, BigInt denominator,
                          std::vector<BigInt> primes) {
  PrimeApproximation out;
  out.max_error = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rational err = abs(Rational(primes[i], denominator) - x[i]);
    if (err > out.max_error) out.max_error = err;
  }
  out.max_error.canonicalize();
  out.max_error_value = out.max_error.get_d();
  out.denominator = std::move(denominator);
  out.primes = std::move(primes);
  return out;
}

// Cheap rejection: does [floor(N*lo) - 1, ceil(N*hi) + 1] contain a prime?
// Only decisive while the window lies inside the sieve.
bool maybe_has_prime(double n, double lo, double hi) {
  double a = std::floor(n * lo) - 1.0;
  double b = std::ceil(n * hi) + 1.0;
  if (b >= static_cast<double>(kSieveLimit) || b > 9.0e15) return true;
  if (a < 2.0) a = 2.0;
  for (auto p = static_cast<std::uint64_t>(a), end = static_cast<std::uint64_t>(b); p <= end; ++p)
    if (small_is_prime(p)) return true;
  return false;
}

std::optional<PrimeApproximation> minimal_denominator_search(std::span<const Rational> x,
                                                             const Rational& epsilon,
                                                             std::uint64_t max_denominator,
                                                             BigInt& largest_tried) {
  const std::size_t n = x.size();
  std::vector<Rational> lower(n), upper(n);
  std::vector<double> lower_d(n), upper_d(n);
  for (std::size_t i = 0; i < n; ++i) {
    lower[i] = x[i] - epsilon;
    upper[i] = x[i] + epsilon;
    lower_d[i] = lower[i].get_d();
    upper_d[i] = upper[i].get_d();
  }
  std::vector<std::vector<BigInt>> candidates(n);
  for (std::uint64_t step = 1; step <= max_denominator; ++step) {
    const double nd = static_cast<double>(step);
    bool plausible = true;
    for (std::size_t i = 0; i < n && plausible; ++i)
      plausible = maybe_has_prime(nd, lower_d[i], upper_d[i]);
    if (!plausible) continue;

    BigInt denominator(static_cast<unsigned long>(step));
    largest_tried = denominator;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      candidates[i] = first_primes(ceil_mul(denominator, lower[i]),
                                   floor_mul(denominator, upper[i]), n);
      ok = !candidates[i].empty();
    }
    if (!ok) continue;
    std::vector<BigInt> chosen;
    if (pick_distinct(candidates, 0, chosen)) return finish(x, denominator, std::move(chosen));
  }
  largest_tried = BigInt(static_cast<unsigned long>(max_denominator));
  return std::nullopt;
}

std::optional<PrimeApproximation> anchored_window_search(std::span<const Rational> x,
                                                         const Rational& epsilon,
                                                         std::uint64_t max_rounds,
                                                         BigInt& largest_tried) {
  const std::size_t n = x.size();
  // Decimal grid fine enough that truncation plus n distinctness bumps
  // stays within epsilon/2.
  BigInt scale = 1;
  while (Rational(BigInt(static_cast<unsigned long>(n + 1)), scale) > epsilon / 2) scale *= 10;
  const Rational step(1, scale);

  std::vector<Rational> anchor(n);
  for (std::size_t i = 0; i < n; ++i) {
    BigInt cells;
    BigInt num = x[i].get_num() * scale;
    mpz_fdiv_q(cells.get_mpz_t(), num.get_mpz_t(), x[i].get_den_mpz_t());
    if (cells == 0) cells = 1;
    anchor[i] = Rational(cells, scale);
    anchor[i].canonicalize();
    while (std::find(anchor.begin(), anchor.begin() + static_cast<long>(i), anchor[i]) !=
           anchor.begin() + static_cast<long>(i))
      anchor[i] += step;
  }
  const Rational largest = *std::max_element(anchor.begin(), anchor.end());
  const Rational widen = 1 + epsilon / (2 * largest);

  std::vector<std::vector<BigInt>> candidates(n);
  for (std::uint64_t round = 1; round <= max_rounds; ++round) {
    BigInt denominator = scale * static_cast<unsigned long>(round);
    largest_tried = denominator;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      BigInt base = floor_mul(denominator, anchor[i]);  // exact: anchor has denominator | scale
      candidates[i] = first_primes(base + 1, floor_mul(denominator, anchor[i] * widen), n);
      ok = !candidates[i].empty();
    }
    if (!ok) continue;
    std::vector<BigInt> chosen;
    if (pick_distinct(candidates, 0, chosen)) return finish(x, denominator, std::move(chosen));
  }
  return std::nullopt;
}

}  // namespace

bool is_pairwise_coprime(std::span<const BigInt> v) {
  if (v.empty()) throw InvalidInput("weight vector must be nonempty");
  for (const BigInt& e : v)
    if (e < 1) throw InvalidInput("weights must be positive integers, got " + e.get_str());
  BigInt g;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      mpz_gcd(g.get_mpz_t(), v[i].get_mpz_t(), v[j].get_mpz_t());
      if (g != 1) return false;
    }
  return true;
}

CoprimeVector::CoprimeVector(std::vector<BigInt> entries) : entries_(std::move(entries)) {
  if (!is_pairwise_coprime(entries_)) {
    std::string s;
    for (const auto& e : entries_) s += (s.empty() ? "" : ",") + e.get_str();
    throw InvalidInput("weights (" + s + ") are not pairwise coprime");
  }
}

CoprimeVector::CoprimeVector(std::initializer_list<long> entries)
    : CoprimeVector(std::vector<BigInt>(entries.begin(), entries.end())) {}

BigInt weight_product(const CoprimeVector& v) {
  BigInt p = 1;
  for (const BigInt& e : v.entries()) p *= e;
  return p;
}

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  if (fits_u64(n) && n < kSieveLimit) return small_is_prime(to_u64(n));
  for (unsigned p : kWitnesses)
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  if (n >= kDeterministicBound)
    throw ResourceLimit("primality of " + n.get_str() +
                        " exceeds the deterministic Miller-Rabin range");
  return miller_rabin(n);
}

std::optional<BigInt> prime_in_interval(const BigInt& lo, const BigInt& hi) {
  if (!(lo < hi)) throw InvalidInput("prime_in_interval requires lo < hi");
  auto found = first_primes(lo + 1, hi - 1, 1);
  if (found.empty()) return std::nullopt;
  return found.front();
}

PrimeApproximation approximate_by_primes(std::span<const Rational> x, const Rational& epsilon,
                                         const ApproxOptions& options) {
  if (x.empty()) throw InvalidInput("approximate_by_primes needs a nonempty vector");
  for (const Rational& xi : x)
    if (sgn(xi) <= 0) throw InvalidInput("coordinates must be positive, got " + xi.get_str());
  if (sgn(epsilon) <= 0) throw InvalidInput("epsilon must be positive");

  BigInt largest_tried = 0;
  if (options.strategy != ApproxStrategy::kAnchoredWindows) {
    if (auto r = minimal_denominator_search(x, epsilon, options.max_denominator, largest_tried))
      return *r;
    if (options.strategy == ApproxStrategy::kMinimalDenominator)
      throw ResourceLimit("no prime approximation with denominator <= " +
                          largest_tried.get_str());
  }
  if (auto r = anchored_window_search(x, epsilon, options.max_anchor_rounds, largest_tried))
    return *r;
  throw ResourceLimit("prime approximation search exhausted; largest denominator tried " +
                      largest_tried.get_str());
}

PrimeApproximation approximate_by_primes(std::span<const double> x, double epsilon,
                                         const ApproxOptions& options) {
  std::vector<Rational> exact;
  exact.reserve(x.size());
  for (double v : x) {
    if (!std::isfinite(v)) throw InvalidInput("coordinates must be finite");
    exact.emplace_back(v);
  }
  if (!std::isfinite(epsilon)) throw InvalidInput("epsilon must be finite");
  return approximate_by_primes(exact, Rational(epsilon), options);
}

}  // namespace sympack
