#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sympack/blowup_model.hpp"
#include "sympack/errors.hpp"
#include "sympack/volume_oracle.hpp"

using namespace sympack;

namespace {

Ellipsoid ell(std::vector<Rational> w, Rational r) {
  Ellipsoid e;
  for (auto& x : w) e.weights.emplace_back(x);
  e.capacity = r;
  return e;
}

double within(const VolumeEstimate& est, double exact) {
  return std::abs(est.value - exact) / est.standard_error;
}

}  // namespace

TEST_CASE("closed forms") {
  CHECK(ellipsoid_volume_closed_form(ell({1}, 1), VolumeConvention::kLebesgue) == Scalar(1));
  CHECK(ellipsoid_volume_closed_form(ell({1, 1}, 1), VolumeConvention::kLebesgue) ==
        Scalar(Rational(1, 2)));
  CHECK(ellipsoid_volume_closed_form(ell({2, 3}, 1), VolumeConvention::kTopPower) ==
        Scalar(Rational(1, 6)));
  CHECK(ellipsoid_volume_closed_form(ell({Rational(3, 2), 5}, 2), VolumeConvention::kTopPower) ==
        Scalar(Rational(4 * 2, 15)));
}

TEST_CASE("conventions differ by n! and scale as lambda^n") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    std::vector<Rational> w;
    for (int i = 0; i < n; ++i) w.emplace_back(1 + rng() % 9, 1 + rng() % 4);
    for (auto& q : w) q.canonicalize();
    Rational r(1 + rng() % 20, 3), lambda(1 + rng() % 5, 2);
    r.canonicalize();
    lambda.canonicalize();
    long fact = 1;
    for (int k = 2; k <= n; ++k) fact *= k;
    auto leb = ellipsoid_volume_closed_form(ell(w, r), VolumeConvention::kLebesgue);
    auto top = ellipsoid_volume_closed_form(ell(w, r), VolumeConvention::kTopPower);
    CHECK(top == leb * Scalar(fact));
    for (auto conv : {VolumeConvention::kLebesgue, VolumeConvention::kTopPower})
      CHECK(ellipsoid_volume_closed_form(ell(w, lambda * r), conv) ==
            ellipsoid_volume_closed_form(ell(w, r), conv) * Scalar(lambda).pow(n));
  }
}

TEST_CASE("Monte Carlo agrees with closed forms") {
  auto e = ell({1, 1}, 1);
  auto est = ellipsoid_volume_monte_carlo(e, 1'000'000, 42);
  CHECK(within(est, 0.5) < 3);
  CHECK(est.samples == 1'000'000);
  CHECK(est.convention == VolumeConvention::kLebesgue);
  est = ellipsoid_volume_monte_carlo(ell({2, 3}, 1), 1'000'000, 42);
  CHECK(within(est, 1.0 / 12) < 3);
  est = ellipsoid_volume_monte_carlo(ell({1, 1}, 0), 10'000, 1);
  CHECK(est.value == 0);
  CHECK_THROWS_AS(ellipsoid_volume_monte_carlo(e, 9'999, 1), InvalidInput);
}

TEST_CASE("Monte Carlo on random ellipsoids") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> wd(0.2, 6.0), rd(0.1, 4.0);
  int bad = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Ellipsoid e;
    int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) e.weights.emplace_back(wd(rng));
    e.capacity = rd(rng);
    auto exact = ellipsoid_volume_closed_form(e, VolumeConvention::kLebesgue).to_double();
    auto est = ellipsoid_volume_monte_carlo(e, 200'000, 1000 + trial);
    bad += within(est, exact) > 4;
  }
  CHECK(bad == 0);
}

TEST_CASE("worker count does not change the estimate") {
  auto e = ell({Rational(3, 2), 2, 5}, Rational(7, 3));
  auto one = ellipsoid_volume_monte_carlo(e, 300'001, 9, 1);
  for (unsigned w : {2u, 3u, 8u}) {
    auto many = ellipsoid_volume_monte_carlo(e, 300'001, 9, w);
    CHECK(many.hits == one.hits);
    CHECK(many.value == one.value);
    CHECK(many.standard_error == one.standard_error);
  }
  auto other_seed = ellipsoid_volume_monte_carlo(e, 300'001, 10, 1);
  CHECK(other_seed.hits != one.hits);
}

TEST_CASE("total packing volume") {
  std::vector<Ellipsoid> three(3, ell({1, 2}, 1));
  CHECK(total_packing_volume(three, VolumeConvention::kTopPower) == Scalar(Rational(3, 2)));
  std::vector<Ellipsoid> ball{ell({1, 1}, 1)};
  CHECK(total_packing_volume(ball, VolumeConvention::kTopPower) == Scalar(1));
  std::vector<Ellipsoid> empty_region{ell({1, 1}, 0)};
  CHECK(total_packing_volume(empty_region, VolumeConvention::kTopPower) == Scalar(0));
  CHECK_THROWS_AS(total_packing_volume({}, VolumeConvention::kTopPower), InvalidInput);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(ell({1, 0}, 1).validate(), InvalidInput);
  CHECK_THROWS_AS(ell({1, 1}, -1).validate(), InvalidInput);
  CHECK_THROWS_AS(ell({}, 1).validate(), InvalidInput);
  CHECK(ell({2, 3}, 1).simple_weights().has_value());
  CHECK_FALSE(ell({2, 4}, 1).simple_weights().has_value());
  CHECK_FALSE(ell({Rational(3, 2), 1}, 1).simple_weights().has_value());
}

TEST_CASE("blow-up identity picks out r^n/<a> among the candidate volume formulas") {
  // top_intersection(s=1, c_i=r_i/<a_i>) must equal V - sum vol_i. Only the
  // r^n/<a> form passes; r^{2n}/<a>^n and r^n/<a>^n each fail somewhere.
  auto pw = [](Rational x, int k) {
    Rational out = 1;
    for (int i = 0; i < k; ++i) out *= x;
    return out;
  };
  struct Candidate {
    std::string name;
    std::function<Rational(const Rational&, const BigInt&, int)> vol;
    int failures;
  };
  std::vector<Candidate> cands{
      {"r^n/<a>", [&](const Rational& r, const BigInt& a, int n) -> Rational { return pw(r, n) / Rational(a); }, 0},
      {"r^2n/<a>^n",
       [&](const Rational& r, const BigInt& a, int n) -> Rational { return pw(r, 2 * n) / pw(Rational(a), n); }, 0},
      {"r^n/<a>^n",
       [&](const Rational& r, const BigInt& a, int n) -> Rational { return pw(r, n) / pw(Rational(a), n); }, 0},
  };
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 2);
    ManifoldModel m{n, Scalar(Rational(1 + rng() % 40, 3)), {}};
    std::vector<WeightedCapacity> caps;
    for (std::size_t i = 0; i < 1 + rng() % 3; ++i) {
      auto w = oracle::random_coprime(rng, static_cast<std::size_t>(n), 7);
      Rational r(1 + rng() % 9, 1 + rng() % 3);
      r.canonicalize();
      caps.push_back({w, Scalar(r)});
    }
    auto b2 = top_intersection(packing_class(m, caps), m).rational();
    for (auto& c : cands) {
      Rational rhs = m.top_power.rational();
      for (auto& e : caps) rhs -= c.vol(e.capacity.rational(), weight_product(CoprimeVector(e.weights)), n);
      c.failures += rhs != b2;
    }
  }
  CHECK(cands[0].failures == 0);
  CHECK(cands[1].failures > 0);
  CHECK(cands[2].failures > 0);
  for (auto& c : cands) MESSAGE(c.name << ": identity failed in " << c.failures << " of 40 cases");
}
