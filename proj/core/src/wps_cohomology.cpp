#include "sympack/wps_cohomology.hpp"

#include "sympack/errors.hpp"

namespace sympack {

WpsSpace::WpsSpace(CoprimeVector weights)
    : weights_(std::move(weights)), product_(sympack::weight_product(weights_)) {
  if (weights_.size() < 2)
    throw InvalidInput("a weighted projective space needs at least two weights");
}

WpsRingElement::WpsRingElement(const WpsSpace& space)
    : space_(space), coefficients_(static_cast<std::size_t>(space.complex_dimension()) + 1) {}

WpsRingElement::WpsRingElement(const WpsSpace& space, std::vector<Rational> coefficients)
    : space_(space), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != static_cast<std::size_t>(space.complex_dimension()) + 1)
    throw InvalidInput("coefficient vector length must be n + 1");
  for (auto& c : coefficients_) c.canonicalize();
}

WpsRingElement WpsRingElement::generator(const WpsSpace& space, int degree) {
  if (degree < 0 || degree > space.complex_dimension())
    throw InvalidInput("generator degree out of range");
  WpsRingElement e(space);
  e.coefficients_[static_cast<std::size_t>(degree)] = 1;
  return e;
}

WpsRingElement WpsRingElement::operator+(const WpsRingElement& other) const {
  if (!(space_ == other.space_)) throw InvalidInput("ring elements live over different spaces");
  WpsRingElement out(space_);
  for (std::size_t i = 0; i < coefficients_.size(); ++i)
    out.coefficients_[i] = coefficients_[i] + other.coefficients_[i];
  return out;
}

WpsRingElement WpsRingElement::scaled(const Rational& factor) const {
  WpsRingElement out(space_);
  for (std::size_t i = 0; i < coefficients_.size(); ++i)
    out.coefficients_[i] = coefficients_[i] * factor;
  return out;
}

WpsRingElement ring_multiply(const WpsRingElement& u, const WpsRingElement& v,
                             const WpsSpace& space) {
  if (!(u.space() == space) || !(v.space() == space))
    throw InvalidInput("ring_multiply: operands belong to different weighted projective spaces");
  const int n = space.complex_dimension();
  const Rational product(space.weight_product());
  WpsRingElement out(space);
  std::vector<Rational> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    if (sgn(u.coefficient(i)) == 0) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (sgn(v.coefficient(j)) == 0) continue;
      // alpha_0 is the unit; every other product picks up one factor <a>.
      Rational term = u.coefficient(i) * v.coefficient(j);
      if (i > 0 && j > 0) term *= product;
      c[static_cast<std::size_t>(i + j)] += term;
    }
  }
  return WpsRingElement(space, std::move(c));
}

WpsRingElement ring_power(const WpsRingElement& u, unsigned k) {
  WpsRingElement acc = WpsRingElement::generator(u.space(), 0);
  for (unsigned i = 0; i < k; ++i) acc = ring_multiply(acc, u, u.space());
  return acc;
}

Rational top_pairing(const WpsRingElement& u, const WpsSpace& space) {
  if (!(u.space() == space)) throw InvalidInput("top_pairing: element lives over another space");
  return u.coefficient(space.complex_dimension());
}

WpsRingElement fubini_study_class(const WpsSpace& space, const Rational& r) {
  if (sgn(r) <= 0) throw InvalidInput("Fubini-Study parameter r must be positive");
  return WpsRingElement::generator(space, 1).scaled(Rational(r / space.weight_product()));
}

Rational fubini_study_top_power(const WpsSpace& space, const Rational& r) {
  auto omega = fubini_study_class(space, r);
  return top_pairing(ring_power(omega, static_cast<unsigned>(space.complex_dimension())), space);
}

std::vector<SingularPoint> singular_locus(const WpsSpace& space) {
  std::vector<SingularPoint> out;
  const auto& w = space.weights().entries();
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] > 1) out.push_back({static_cast<int>(i), w[i]});
  return out;
}

}  // namespace sympack
