#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <string>
#include <string_view>
#include <variant>

namespace sympack {

using BigInt = mpz_class;
using Rational = mpq_class;

/// A real number that stays an exact rational for as long as every
/// operand is exact, and degrades to a double otherwise.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  template <std::integral T>
  Scalar(T v) : value_(Rational(static_cast<long>(v))) {}
  Scalar(const BigInt& v) : value_(Rational(v)) {}
  Scalar(Rational v);
  Scalar(double v) : value_(v) {}

  /// Parses "3", "-7/2", "0.125" or "1e-3" into an exact rational.
  static Scalar parse_exact(std::string_view text);

  /// Exact rational whose decimal expansion is the shortest string that
  /// round-trips to `v` (so 0.1 becomes 1/10, not the binary neighbour).
  static Scalar from_shortest_decimal(double v);

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const;
  double to_double() const;

  /// Exact value if available, otherwise the exact binary value of the double.
  Rational to_rational() const;

  int sign() const;
  Scalar pow(unsigned exponent) const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  /// Numeric comparison (an exact 1/2 equals an inexact 0.5).
  friend std::partial_ordering operator<=>(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// "p/q" for exact values, shortest round-trip decimal otherwise.
  std::string to_string() const;

 private:
  std::variant<Rational, double> value_;
};

/// Fixed-point decimal rendering of an exact rational, rounded half away
/// from zero to `digits` places after the point.
std::string format_fixed(const Rational& value, int digits);

}  // namespace sympack
