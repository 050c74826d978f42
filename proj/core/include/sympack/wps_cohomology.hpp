#pragma once

#include <cstddef>
#include <vector>

#include "sympack/coprime_arith.hpp"
#include "sympack/scalar.hpp"

namespace sympack {

/// Weighted projective space CP^n(a_0, ..., a_n) with pairwise coprime
/// weights, so its singular locus is a finite set of coordinate points.
class WpsSpace {
 public:
  explicit WpsSpace(CoprimeVector weights);

  const CoprimeVector& weights() const { return weights_; }
  int complex_dimension() const { return static_cast<int>(weights_.size()) - 1; }
  /// <a>, the product of all weights.
  const BigInt& weight_product() const { return product_; }

  friend bool operator==(const WpsSpace& a, const WpsSpace& b) { return a.weights_ == b.weights_; }

 private:
  CoprimeVector weights_;
  BigInt product_;
};

/// Element sum_i c_i alpha_i of H^*(CP^n(a); Q), where alpha_i generates
/// H^{2i} and alpha_i alpha_j = <a> alpha_{i+j}.
class WpsRingElement {
 public:
  explicit WpsRingElement(const WpsSpace& space);
  WpsRingElement(const WpsSpace& space, std::vector<Rational> coefficients);

  /// The generator alpha_degree.
  static WpsRingElement generator(const WpsSpace& space, int degree);

  const WpsSpace& space() const { return space_; }
  const std::vector<Rational>& coefficients() const { return coefficients_; }
  const Rational& coefficient(int degree) const { return coefficients_.at(static_cast<std::size_t>(degree)); }

  WpsRingElement operator+(const WpsRingElement& other) const;
  WpsRingElement scaled(const Rational& factor) const;

  friend bool operator==(const WpsRingElement&, const WpsRingElement&) = default;

 private:
  WpsSpace space_;
  std::vector<Rational> coefficients_;
};

/// Cup product; throws InvalidInput if u, v and space disagree.
WpsRingElement ring_multiply(const WpsRingElement& u, const WpsRingElement& v,
                             const WpsSpace& space);

/// u^k by repeated multiplication (k >= 0; u^0 = alpha_0).
WpsRingElement ring_power(const WpsRingElement& u, unsigned k);

/// Pairing with the fundamental class, normalized by <alpha_n, [CP^n(a)]> = 1.
Rational top_pairing(const WpsRingElement& u, const WpsSpace& space);

/// Class of the reduced form Omega_{a,r}: (r / <a>) alpha_1. Requires r > 0.
WpsRingElement fubini_study_class(const WpsSpace& space, const Rational& r);

/// <[Omega_{a,r}]^n, [CP^n(a)]> = r^n / <a>.
Rational fubini_study_top_power(const WpsSpace& space, const Rational& r);

struct SingularPoint {
  int coordinate_index;  // the point [0 : ... : 1 : ... : 0] with 1 at this index
  BigInt stabilizer_order;  // order of the cyclic isotropy group
};

/// Coordinate points with nontrivial isotropy Z/a_i, one per weight a_i > 1.
std::vector<SingularPoint> singular_locus(const WpsSpace& space);

}  // namespace sympack
