#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sympack/errors.hpp"
#include "sympack/wps_cohomology.hpp"

using namespace sympack;

namespace {

WpsRingElement random_element(const WpsSpace& s, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  std::vector<Rational> c;
  for (int i = 0; i <= s.complex_dimension(); ++i) c.emplace_back(num(rng), den(rng));
  for (auto& q : c) q.canonicalize();
  return WpsRingElement(s, c);
}

}  // namespace

TEST_CASE("ring products on small spaces") {
  WpsSpace p2(CoprimeVector{1, 1, 1});
  auto a1 = WpsRingElement::generator(p2, 1);
  CHECK(ring_multiply(a1, a1, p2) == WpsRingElement::generator(p2, 2));

  WpsSpace w(CoprimeVector{1, 2, 3});
  auto b1 = WpsRingElement::generator(w, 1);
  CHECK(ring_multiply(b1, b1, w) == WpsRingElement::generator(w, 2).scaled(6));
  CHECK(ring_multiply(b1, WpsRingElement::generator(w, 2), w) == WpsRingElement(w));

  WpsSpace other(CoprimeVector{1, 1, 1, 1});
  CHECK_THROWS_AS(ring_multiply(a1, WpsRingElement::generator(other, 1), other), InvalidInput);
  CHECK_THROWS_AS(ring_multiply(a1, a1, w), InvalidInput);
  CHECK_THROWS_AS(WpsSpace(CoprimeVector{3}), InvalidInput);
}

TEST_CASE("alpha_0 is the unit") {
  WpsSpace w(CoprimeVector{2, 3, 5});
  std::mt19937_64 rng(1);
  auto u = random_element(w, rng);
  CHECK(ring_multiply(WpsRingElement::generator(w, 0), u, w) == u);
  CHECK(ring_power(u, 0) == WpsRingElement::generator(w, 0));
}

TEST_CASE("top pairing") {
  WpsSpace p2(CoprimeVector{1, 1, 1});
  auto a1 = WpsRingElement::generator(p2, 1);
  CHECK(top_pairing(ring_power(a1, 2), p2) == 1);
  WpsSpace w(CoprimeVector{1, 2, 3});
  CHECK(top_pairing(ring_power(WpsRingElement::generator(w, 1), 2), w) == 6);
  WpsSpace w3(CoprimeVector{1, 2, 3, 5});
  auto c1 = WpsRingElement::generator(w3, 1);
  CHECK(top_pairing(ring_multiply(ring_multiply(c1, c1, w3), c1, w3), w3) == 900);
}

TEST_CASE("alpha_1^n pairs to <a>^(n-1) on random spaces") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 6;
    WpsSpace s{CoprimeVector(oracle::random_coprime(rng, n + 1, 60))};
    BigInt expected = 1;
    for (std::size_t k = 1; k < n; ++k) expected *= s.weight_product();
    CHECK(top_pairing(ring_power(WpsRingElement::generator(s, 1), static_cast<unsigned>(n)), s) ==
          Rational(expected));
  }
}

TEST_CASE("associativity, commutativity and distributivity on random elements") {
  std::mt19937_64 rng(4);
  for (std::size_t n = 1; n <= 8; ++n) {
    WpsSpace s{CoprimeVector(oracle::random_coprime(rng, n + 1, 30))};
    for (int i = 0; i <= static_cast<int>(n); ++i)
      for (int j = 0; j <= static_cast<int>(n); ++j)
        for (int k = 0; k <= static_cast<int>(n); ++k) {
          auto a = WpsRingElement::generator(s, i), b = WpsRingElement::generator(s, j),
               c = WpsRingElement::generator(s, k);
          CHECK(ring_multiply(ring_multiply(a, b, s), c, s) ==
                ring_multiply(a, ring_multiply(b, c, s), s));
        }
    auto u = random_element(s, rng), v = random_element(s, rng), w = random_element(s, rng);
    CHECK(ring_multiply(u, v, s) == ring_multiply(v, u, s));
    CHECK(ring_multiply(u, v + w, s) == ring_multiply(u, v, s) + ring_multiply(u, w, s));
    CHECK(ring_multiply(ring_multiply(u, v, s), w, s) == ring_multiply(u, ring_multiply(v, w, s), s));
  }
}

TEST_CASE("reduced form class and volume") {
  WpsSpace p1(CoprimeVector{1, 1});
  CHECK(fubini_study_class(p1, 1) == WpsRingElement::generator(p1, 1));
  WpsSpace w(CoprimeVector{1, 2, 3});
  CHECK(fubini_study_class(w, 1) == WpsRingElement::generator(w, 1).scaled(Rational(1, 6)));
  CHECK(fubini_study_class(w, 6) == WpsRingElement::generator(w, 1));
  CHECK(fubini_study_class(w, Rational(7, 3)) == fubini_study_class(w, 1).scaled(Rational(7, 3)));
  CHECK_THROWS_AS(fubini_study_class(w, 0), InvalidInput);
  // top power of the class equals r^n / <a>
  for (Rational r : {Rational(1), Rational(5, 2), Rational(6)}) {
    auto cls = fubini_study_class(w, r);
    CHECK(top_pairing(ring_power(cls, 2), w) == fubini_study_top_power(w, r));
    CHECK(fubini_study_top_power(w, r) == r * r / 6);
  }
}

TEST_CASE("singular locus") {
  CHECK(singular_locus(WpsSpace(CoprimeVector{1, 1, 1})).empty());
  auto pts = singular_locus(WpsSpace(CoprimeVector{1, 2, 3}));
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].coordinate_index == 1);
  CHECK(pts[0].stabilizer_order == 2);
  CHECK(pts[1].coordinate_index == 2);
  CHECK(pts[1].stabilizer_order == 3);
}
