#include "mjq/value.hpp"

#include <cmath>
#include <limits>

namespace mjq {

double Number::to_double() const {
  return is_int() ? static_cast<double>(as_int()) : as_dec();
}

std::optional<std::int64_t> Number::truncated() const {
  if (is_int()) return as_int();
  double d = as_dec();
  if (std::isnan(d)) return std::nullopt;
  d = std::trunc(d);
  if (d >= 9223372036854775807.0) return std::numeric_limits<std::int64_t>::max();
  if (d <= -9223372036854775808.0) return std::numeric_limits<std::int64_t>::min();
  return static_cast<std::int64_t>(d);
}

std::strong_ordering Number::compare(const Number& other) const {
  if (is_int() && other.is_int()) return as_int() <=> other.as_int();
  bool lnan = is_dec() && std::isnan(as_dec());
  bool rnan = other.is_dec() && std::isnan(other.as_dec());
  if (lnan || rnan) return rnan <=> lnan;
  // long double holds every int64 exactly on the supported targets.
  long double l = is_int() ? static_cast<long double>(as_int()) : as_dec();
  long double r = other.is_int() ? static_cast<long double>(other.as_int()) : other.as_dec();
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string_view type_name(Type t) {
  switch (t) {
    case Type::Null: return "null";
    case Type::Boolean: return "boolean";
    case Type::Number: return "number";
    case Type::String: return "string";
    case Type::Array: return "array";
    case Type::Object: return "object";
  }
  return "?";
}

Type Value::type() const {
  switch (repr_.index()) {
    case 0: return Type::Null;
    case 1: return Type::Boolean;
    case 2: return Type::Number;
    case 3: return Type::String;
    case 4: return Type::Array;
    default: return Type::Object;
  }
}

bool Value::truthy() const {
  if (is_null()) return false;
  if (is_bool()) return as_bool();
  return true;
}

namespace {

int rank(const Value& v) {
  switch (v.type()) {
    case Type::Null: return 0;
    case Type::Boolean: return v.as_bool() ? 2 : 1;
    case Type::Number: return 3;
    case Type::String: return 4;
    case Type::Array: return 5;
    case Type::Object: return 6;
  }
  return 0;
}

Ordering from(std::strong_ordering o) {
  if (o < 0) return Ordering::Less;
  if (o > 0) return Ordering::Greater;
  return Ordering::Equal;
}

}  // namespace

Ordering cmp(const Value& l, const Value& r) {
  int rl = rank(l), rr = rank(r);
  if (rl != rr) return rl < rr ? Ordering::Less : Ordering::Greater;
  switch (l.type()) {
    case Type::Null:
    case Type::Boolean:
      return Ordering::Equal;
    case Type::Number:
      return from(l.as_number().compare(r.as_number()));
    case Type::String:
      return from(l.as_string().compare(r.as_string()) <=> 0);
    case Type::Array: {
      const auto& a = l.as_array();
      const auto& b = r.as_array();
      for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (auto o = cmp(a[i], b[i]); o != Ordering::Equal) return o;
      }
      return from(a.size() <=> b.size());
    }
    case Type::Object: {
      // Sorted key arrays first, then the value arrays in key order.
      const auto& a = l.as_object();
      const auto& b = r.as_object();
      auto ia = a.begin();
      auto ib = b.begin();
      for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
        if (auto c = ia->first.compare(ib->first); c != 0) return c < 0 ? Ordering::Less : Ordering::Greater;
      }
      if (a.size() != b.size()) return from(a.size() <=> b.size());
      for (ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
        if (auto o = cmp(ia->second, ib->second); o != Ordering::Equal) return o;
      }
      return Ordering::Equal;
    }
  }
  return Ordering::Equal;
}

bool operator==(const Value& l, const Value& r) { return cmp(l, r) == Ordering::Equal; }

std::strong_ordering operator<=>(const Value& l, const Value& r) {
  switch (cmp(l, r)) {
    case Ordering::Less: return std::strong_ordering::less;
    case Ordering::Equal: return std::strong_ordering::equal;
    case Ordering::Greater: return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

Exception Exception::error(Value payload) {
  Exception e;
  e.kind_ = Kind::Error;
  e.payload_ = std::move(payload);
  return e;
}

Exception Exception::brk(Label label) {
  Exception e;
  e.kind_ = Kind::Break;
  e.label_ = std::move(label);
  return e;
}

Exception Exception::with_polarity(bool polarised) const {
  Exception e = *this;
  e.polarised_ = polarised;
  return e;
}

ValueResult error_result(std::string message) { return Exception::error(Value(std::move(message))); }

}  // namespace mjq
