#include "sympack/scalar.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "sympack/errors.hpp"

namespace sympack {

namespace {

BigInt pow10(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6)
      throw InvalidInput("malformed exponent in number '" + std::string(text) + "'");
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if ((int_part.empty() && frac_part.empty()) ||
        (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)))
      throw InvalidInput("malformed number '" + std::string(text) + "'");
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) throw InvalidInput("malformed number '" + std::string(text) + "'");
    digits = std::string(s);
  }
  Rational q(BigInt(digits, 10));
  if (exponent > 0) q *= pow10(static_cast<unsigned long>(exponent));
  if (exponent < 0) q /= pow10(static_cast<unsigned long>(-exponent));
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

}  // namespace

Scalar::Scalar(Rational v) : value_(std::move(v)) {
  std::get<Rational>(value_).canonicalize();
}

Scalar Scalar::parse_exact(std::string_view text) {
  if (text.empty()) throw InvalidInput("empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+'))
      num_digits.remove_prefix(1);
    if (!all_digits(num_digits) || !all_digits(den))
      throw InvalidInput("malformed fraction '" + std::string(text) + "'");
    BigInt d(std::string(den), 10);
    if (d == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    BigInt n(std::string(num_digits), 10);
    if (!num.empty() && num.front() == '-') n = -n;
    return Scalar(Rational(n, d));
  }
  return Scalar(parse_decimal(text));
}

Scalar Scalar::from_shortest_decimal(double v) {
  if (!std::isfinite(v)) throw InvalidInput("non-finite number");
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw InvalidInput("cannot render number");
  return Scalar(parse_decimal(std::string_view(buf, static_cast<size_t>(end - buf))));
}

const Rational& Scalar::rational() const {
  if (!is_exact()) throw InvalidInput("value is not an exact rational");
  return std::get<Rational>(value_);
}

double Scalar::to_double() const {
  if (is_exact()) return std::get<Rational>(value_).get_d();
  return std::get<double>(value_);
}

Rational Scalar::to_rational() const {
  if (is_exact()) return std::get<Rational>(value_);
  double d = std::get<double>(value_);
  if (!std::isfinite(d)) throw InvalidInput("non-finite value has no rational form");
  return Rational(d);
}

int Scalar::sign() const {
  if (is_exact()) return sgn(std::get<Rational>(value_));
  double d = std::get<double>(value_);
  return (d > 0) - (d < 0);
}

Scalar Scalar::pow(unsigned exponent) const {
  if (is_exact()) {
    const Rational& q = std::get<Rational>(value_);
    Rational r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), q.get_num_mpz_t(), exponent);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), q.get_den_mpz_t(), exponent);
    return Scalar(r);
  }
  return Scalar(std::pow(std::get<double>(value_), static_cast<double>(exponent)));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar(Rational(a.rational() + b.rational()));
  return Scalar(a.to_double() + b.to_double());
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar(Rational(a.rational() - b.rational()));
  return Scalar(a.to_double() - b.to_double());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar(Rational(a.rational() * b.rational()));
  return Scalar(a.to_double() * b.to_double());
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.sign() == 0) throw InvalidInput("division by zero");
  if (a.is_exact() && b.is_exact()) return Scalar(Rational(a.rational() / b.rational()));
  return Scalar(a.to_double() / b.to_double());
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(Rational(-std::get<Rational>(value_)));
  return Scalar(-std::get<double>(value_));
}

std::partial_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    int c = cmp(a.rational(), b.rational());
    return c < 0 ? std::partial_ordering::less
                 : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
  }
  if (!std::isfinite(a.to_double()) || !std::isfinite(b.to_double()))
    return a.to_double() <=> b.to_double();
  // Compare exactly: every finite double is a rational.
  int c = cmp(a.to_rational(), b.to_rational());
  return c < 0 ? std::partial_ordering::less
               : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

bool operator==(const Scalar& a, const Scalar& b) {
  return (a <=> b) == std::partial_ordering::equivalent;
}

std::string Scalar::to_string() const {
  if (is_exact()) return std::get<Rational>(value_).get_str();
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, std::get<double>(value_));
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

std::string format_fixed(const Rational& value, int digits) {
  if (digits < 0) digits = 0;
  BigInt scale = pow10(static_cast<unsigned long>(digits));
  Rational scaled = abs(value) * scale;
  // round half away from zero
  BigInt twice_num = 2 * scaled.get_num() + scaled.get_den();
  BigInt twice_den = 2 * scaled.get_den();
  BigInt rounded;
  mpz_fdiv_q(rounded.get_mpz_t(), twice_num.get_mpz_t(), twice_den.get_mpz_t());
  std::string body = rounded.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<size_t>(digits))
      body.insert(0, static_cast<size_t>(digits) + 1 - body.size(), '0');
    body.insert(body.size() - static_cast<size_t>(digits), ".");
  }
  bool negative = sgn(value) < 0 && rounded != 0;
  return negative ? "-" + body : body;
}

}  // namespace sympack
