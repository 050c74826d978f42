#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "sympack/scalar.hpp"

namespace sympack::io {

using Json = nlohmann::json;

/// Digits after the decimal point in every "decimal" field.
inline constexpr int kDecimalPrecision = 12;

struct Location {
  std::size_t line = 1;
  std::size_t column = 1;
};

Location locate(std::string_view text, std::size_t offset);

/// Malformed JSON text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, Location where, const std::string& detail);
  Location where;
};

/// Well-formed JSON that violates the schema or carries unusable values.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& source, Location where, const std::string& pointer,
              const std::string& detail);
  Location where;
  std::string pointer;
};

/// A parsed document that remembers where each value started and the
/// literal text of every non-integer number.
class Document {
 public:
  static Document parse(std::string text, std::string source = "<input>");

  const Json& root() const { return root_; }
  const std::string& source() const { return source_; }

  /// Position of the value at `pointer`, or of its nearest recorded ancestor.
  Location location(const std::string& pointer) const;

  /// Throws SchemaError pointing at the first violation.
  void validate(const Json& schema) const;

  /// Reads the value at `pointer` as an exact number. Accepts JSON numbers,
  /// strings such as "7/3" or "1.25", and {"num", "den"} objects.
  Scalar scalar(const std::string& pointer) const;
  BigInt integer(const std::string& pointer) const;

  [[noreturn]] void fail(const std::string& pointer, const std::string& detail) const;

 private:
  Json root_;
  std::string text_;
  std::string source_;
  std::map<std::string, std::size_t> offsets_;
  std::map<std::string, std::string> number_text_;
};

/// Built-in schema by name: "pack_check", "approx_primes", "wps_ring",
/// "blowup_intersect", "volume".
const Json& schema(std::string_view name);

Json to_json(const BigInt& v);
Json to_json(const Rational& v);
/// {"num", "den", "decimal"} when exact, {"decimal"} otherwise.
Json to_json(const Scalar& v);
Json decimal_json(double v);

/// Compact dump with sorted keys.
std::string canonical(const Json& value);

}  // namespace sympack::io
