#include "json_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <regex>
#include <vector>

#include "schemas.hpp"
#include "sympack/errors.hpp"

namespace sympack::io {

Location locate(std::string_view text, std::size_t offset) {
  Location loc;
  offset = std::min(offset, text.size());
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
  }
  return loc;
}

namespace {

std::string where_prefix(const std::string& source, Location at) {
  return source + ":" + std::to_string(at.line) + ":" + std::to_string(at.column);
}

// Character iterator that publishes how far the parser has read.
class TrackingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  TrackingIterator() = default;
  TrackingIterator(const char* p, const char** sink) : p_(p), sink_(sink) {}

  reference operator*() const { return *p_; }
  TrackingIterator& operator++() {
    ++p_;
    if (sink_) *sink_ = p_;
    return *this;
  }
  TrackingIterator operator++(int) {
    auto old = *this;
    ++*this;
    return old;
  }
  friend bool operator==(const TrackingIterator& a, const TrackingIterator& b) { return a.p_ == b.p_; }

 private:
  const char* p_ = nullptr;
  const char** sink_ = nullptr;
};

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

// Builds the DOM while recording the start offset of every value.
class LocatingHandler {
 public:
  LocatingHandler(const std::string& text, const char** cursor)
      : text_(text), cursor_(cursor) {}

  Json root;
  std::map<std::string, std::size_t> offsets;
  std::map<std::string, std::string> number_text;
  std::string error;
  std::size_t error_offset = 0;

  bool null() { return add(nullptr); }
  bool boolean(bool v) { return add(v); }
  bool number_integer(Json::number_integer_t v) { return add(v); }
  bool number_unsigned(Json::number_unsigned_t v) { return add(v); }
  bool number_float(Json::number_float_t v, const std::string& s) {
    std::string ptr;
    bool ok = add(v, &ptr);
    number_text[ptr] = s;
    return ok;
  }
  bool string(std::string& v) { return add(v); }
  bool binary(Json::binary_t&) { return false; }
  bool start_object(std::size_t) { return open(Json::object()); }
  bool start_array(std::size_t) { return open(Json::array()); }
  bool end_object() { return close(); }
  bool end_array() { return close(); }
  bool key(std::string& k) {
    mark();
    stack_.back().key = k;
    return true;
  }
  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
    error = ex.what();
    if (auto lead = error.find("syntax error"); lead != std::string::npos) error = error.substr(lead);
    error_offset = position > 0 ? position - 1 : 0;
    return false;
  }

 private:
  struct Frame {
    Json* node;
    std::string pointer;
    std::size_t index = 0;
    std::string key;
  };

  std::size_t consumed() const { return static_cast<std::size_t>(*cursor_ - text_.data()); }

  // Start of the token following the last event.
  std::size_t token_start() const {
    std::size_t i = last_end_;
    while (i < text_.size() && (std::isspace(static_cast<unsigned char>(text_[i])) || text_[i] == ':' ||
                                text_[i] == ','))
      ++i;
    return i;
  }

  void mark() { last_end_ = consumed(); }

  Json* insert(Json value, std::string* pointer_out) {
    const std::size_t start = token_start();
    std::string ptr;
    Json* slot;
    if (stack_.empty()) {
      root = std::move(value);
      slot = &root;
    } else if (auto& top = stack_.back(); top.node->is_array()) {
      ptr = top.pointer + "/" + std::to_string(top.index++);
      top.node->push_back(std::move(value));
      slot = &top.node->back();
    } else {
      ptr = top.pointer + "/" + escape_token(top.key);
      slot = &(*top.node)[top.key];
      *slot = std::move(value);
    }
    offsets[ptr] = start;
    mark();
    if (pointer_out) *pointer_out = ptr;
    return slot;
  }

  template <class T>
  bool add(T&& v, std::string* pointer_out = nullptr) {
    insert(Json(std::forward<T>(v)), pointer_out);
    return true;
  }

  bool open(Json empty) {
    std::string ptr;
    Json* slot = insert(std::move(empty), &ptr);
    stack_.push_back({slot, ptr, 0, {}});
    return true;
  }

  bool close() {
    stack_.pop_back();
    mark();
    return true;
  }

  const std::string& text_;
  const char** cursor_;
  std::size_t last_end_ = 0;
  std::vector<Frame> stack_;
};

std::string type_name(const Json& v) {
  if (v.is_number_integer()) return "integer";
  return v.type_name();
}

bool has_type(const Json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  return false;
}

struct Violation {
  std::string pointer;
  std::string detail;
};

class Validator {
 public:
  explicit Validator(const Json& root_schema) : root_(root_schema) {}

  std::optional<Violation> check(const Json& schema, const Json& v, const std::string& ptr) const {
    if (auto ref = schema.find("$ref"); ref != schema.end()) {
      std::string target = ref->get<std::string>();
      return check(root_.at(Json::json_pointer(target.substr(1))), v, ptr);
    }
    if (auto any = schema.find("anyOf"); any != schema.end()) {
      std::optional<Violation> first;
      for (const auto& alt : *any) {
        auto bad = check(alt, v, ptr);
        if (!bad) return std::nullopt;
        if (!first || bad->pointer.size() > first->pointer.size()) first = bad;
      }
      if (first && first->pointer == ptr)
        return Violation{ptr, "expected a number, a \"p/q\" or decimal string, or {\"num\", \"den\"}"};
      return first;
    }
    if (auto t = schema.find("type"); t != schema.end()) {
      bool ok = false;
      std::string expected;
      if (t->is_array()) {
        for (const auto& s : *t) {
          ok = ok || has_type(v, s.get<std::string>());
          expected += (expected.empty() ? "" : " or ") + s.get<std::string>();
        }
      } else {
        expected = t->get<std::string>();
        ok = has_type(v, expected);
      }
      if (!ok) return Violation{ptr, "expected " + expected + ", found " + type_name(v)};
    }
    if (auto e = schema.find("enum"); e != schema.end()) {
      if (std::find(e->begin(), e->end(), v) == e->end()) {
        std::string allowed;
        for (const auto& x : *e) allowed += (allowed.empty() ? "" : ", ") + x.dump();
        return Violation{ptr, "value " + v.dump() + " is not one of " + allowed};
      }
    }
    if (v.is_number()) {
      const double x = v.get<double>();
      if (auto m = schema.find("minimum"); m != schema.end() && x < m->get<double>())
        return Violation{ptr, "must be at least " + m->dump()};
      if (auto m = schema.find("exclusiveMinimum"); m != schema.end() && x <= m->get<double>())
        return Violation{ptr, "must be greater than " + m->dump()};
    }
    if (v.is_string()) {
      if (auto p = schema.find("pattern"); p != schema.end()) {
        if (!std::regex_search(v.get<std::string>(), std::regex(p->get<std::string>())))
          return Violation{ptr, "string " + v.dump() + " is not a number"};
      }
    }
    if (v.is_array()) {
      if (auto m = schema.find("minItems"); m != schema.end() && v.size() < m->get<std::size_t>())
        return Violation{ptr, "needs at least " + m->dump() + " item(s)"};
      if (auto m = schema.find("maxItems"); m != schema.end() && v.size() > m->get<std::size_t>())
        return Violation{ptr, "allows at most " + m->dump() + " item(s)"};
      if (auto items = schema.find("items"); items != schema.end())
        for (std::size_t i = 0; i < v.size(); ++i)
          if (auto bad = check(*items, v[i], ptr + "/" + std::to_string(i))) return bad;
    }
    if (v.is_object()) {
      if (auto req = schema.find("required"); req != schema.end())
        for (const auto& k : *req)
          if (!v.contains(k.get<std::string>()))
            return Violation{ptr, "missing required key \"" + k.get<std::string>() + "\""};
      const auto props = schema.find("properties");
      for (const auto& [k, child] : v.items()) {
        const std::string cptr = ptr + "/" + escape_token(k);
        if (props != schema.end() && props->contains(k)) {
          if (auto bad = check(props->at(k), child, cptr)) return bad;
        } else if (auto extra = schema.find("additionalProperties");
                   extra != schema.end() && extra->is_boolean() && !extra->get<bool>()) {
          return Violation{cptr, "unknown key \"" + k + "\""};
        }
      }
    }
    return std::nullopt;
  }

 private:
  const Json& root_;
};

}  // namespace

ParseError::ParseError(const std::string& source, Location at, const std::string& detail)
    : std::runtime_error(where_prefix(source, at) + ": malformed JSON: " + detail), where(at) {}

SchemaError::SchemaError(const std::string& source, Location at, const std::string& ptr,
                         const std::string& detail)
    : std::runtime_error(where_prefix(source, at) + ": schema violation at " +
                         (ptr.empty() ? std::string("/") : ptr) + ": " + detail),
      where(at),
      pointer(ptr) {}

Document Document::parse(std::string text, std::string source) {
  Document doc;
  doc.text_ = std::move(text);
  doc.source_ = std::move(source);
  const char* cursor = doc.text_.data();
  LocatingHandler handler(doc.text_, &cursor);
  TrackingIterator first(doc.text_.data(), &cursor), last(doc.text_.data() + doc.text_.size(), nullptr);
  if (!Json::sax_parse(first, last, &handler)) {
    throw ParseError(doc.source_, locate(doc.text_, handler.error_offset), handler.error);
  }
  doc.root_ = std::move(handler.root);
  doc.offsets_ = std::move(handler.offsets);
  doc.number_text_ = std::move(handler.number_text);
  return doc;
}

Location Document::location(const std::string& pointer) const {
  std::string p = pointer;
  while (true) {
    if (auto it = offsets_.find(p); it != offsets_.end()) return locate(text_, it->second);
    if (p.empty()) return {};
    p = p.substr(0, p.rfind('/'));
  }
}

void Document::fail(const std::string& pointer, const std::string& detail) const {
  throw SchemaError(source_, location(pointer), pointer, detail);
}

void Document::validate(const Json& schema) const {
  if (auto bad = Validator(schema).check(schema, root_, "")) fail(bad->pointer, bad->detail);
}

namespace {

BigInt integer_from(const Json& v) {
  if (v.is_number_unsigned()) return BigInt(std::to_string(v.get<std::uint64_t>()));
  if (v.is_number_integer()) return BigInt(std::to_string(v.get<std::int64_t>()));
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    BigInt out;
    if (s.empty() || out.set_str(s, 10) != 0) throw InvalidInput("not an integer: \"" + s + "\"");
    return out;
  }
  throw InvalidInput("expected an integer, found " + type_name(v));
}

}  // namespace

BigInt Document::integer(const std::string& pointer) const {
  const Json& v = root_.at(Json::json_pointer(pointer));
  if (auto raw = number_text_.find(pointer); raw != number_text_.end()) {
    BigInt out;
    if (out.set_str(raw->second, 10) == 0) return out;
    fail(pointer, "expected an integer, found " + raw->second);
  }
  try {
    return integer_from(v);
  } catch (const InvalidInput& e) {
    fail(pointer, e.what());
  }
}

Scalar Document::scalar(const std::string& pointer) const {
  const Json& v = root_.at(Json::json_pointer(pointer));
  try {
    if (v.is_number_float()) {
      if (auto raw = number_text_.find(pointer); raw != number_text_.end())
        return Scalar::parse_exact(raw->second);
      return Scalar::from_shortest_decimal(v.get<double>());
    }
    if (v.is_number()) return Scalar(integer_from(v));
    if (v.is_string()) return Scalar::parse_exact(v.get<std::string>());
    if (v.is_object() && v.contains("num") && v.contains("den")) {
      BigInt den = integer_from(v["den"]);
      if (den == 0) throw InvalidInput("zero denominator");
      Rational q(integer_from(v["num"]), den);
      q.canonicalize();
      return Scalar(q);
    }
  } catch (const InvalidInput& e) {
    fail(pointer, e.what());
  }
  fail(pointer, "expected a number, found " + type_name(v));
}

const Json& schema(std::string_view name) {
  static const std::map<std::string, Json, std::less<>> parsed = [] {
    std::map<std::string, Json, std::less<>> out;
    for (const auto& [key, text] : embedded_schemas()) out.emplace(key, Json::parse(text));
    return out;
  }();
  auto it = parsed.find(name);
  if (it == parsed.end()) throw std::out_of_range("unknown schema " + std::string(name));
  return it->second;
}

Json to_json(const BigInt& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

Json to_json(const Rational& v) {
  return Json{{"num", to_json(v.get_num())},
              {"den", to_json(v.get_den())},
              {"decimal", format_fixed(v, kDecimalPrecision)}};
}

Json decimal_json(double v) {
  if (!std::isfinite(v)) return Json{{"decimal", std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf")}};
  return Json{{"decimal", format_fixed(Rational(v), kDecimalPrecision)}}; }

Json to_json(const Scalar& v) { return v.is_exact() ? to_json(v.rational()) : decimal_json(v.to_double()); }

std::string canonical(const Json& value) { return value.dump(-1, ' ', false, Json::error_handler_t::strict); }

}  // namespace sympack::io
