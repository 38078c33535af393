#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mjq {

/// A JSON number: exact 64-bit integer or IEEE-754 double.
///
/// Integer arithmetic stays integral unless it overflows; comparison between
/// the two representations is by numeric value. NaN sorts below every other
/// number and equals itself, so the order stays total.
class Number {
 public:
  constexpr Number() = default;
  constexpr Number(std::int64_t i) : repr_(i) {}
  constexpr Number(int i) : repr_(static_cast<std::int64_t>(i)) {}
  constexpr Number(double d) : repr_(d) {}

  bool is_int() const { return std::holds_alternative<std::int64_t>(repr_); }
  bool is_dec() const { return !is_int(); }
  std::int64_t as_int() const { return std::get<std::int64_t>(repr_); }
  double as_dec() const { return std::get<double>(repr_); }
  double to_double() const;

  /// Truncation toward zero, saturating at the int64 range. Empty for NaN.
  std::optional<std::int64_t> truncated() const;

  std::strong_ordering compare(const Number& other) const;

 private:
  std::variant<std::int64_t, double> repr_{std::int64_t{0}};
};

class Value;
using Array = std::vector<Value>;
// std::less on std::string is byte order, which for UTF-8 equals code point
// order; that is the key order used for iteration and serialisation.
using Object = std::map<std::string, Value, std::less<>>;

enum class Type { Null, Boolean, Number, String, Array, Object };

std::string_view type_name(Type t);

/// An immutable JSON value. Strings, arrays and objects are shared, so copies
/// are cheap and values may be passed freely between threads.
class Value {
 public:
  Value() = default;
  Value(std::nullptr_t) {}
  Value(bool b) : repr_(b) {}
  Value(Number n) : repr_(n) {}
  Value(std::int64_t i) : repr_(Number(i)) {}
  Value(int i) : repr_(Number(i)) {}
  Value(double d) : repr_(Number(d)) {}
  Value(std::string s) : repr_(std::make_shared<const std::string>(std::move(s))) {}
  Value(std::string_view s) : Value(std::string(s)) {}
  Value(const char* s) : Value(std::string(s)) {}
  Value(Array a) : repr_(std::make_shared<const Array>(std::move(a))) {}
  Value(Object o) : repr_(std::make_shared<const Object>(std::move(o))) {}

  Type type() const;
  bool is_null() const { return type() == Type::Null; }
  bool is_bool() const { return type() == Type::Boolean; }
  bool is_number() const { return type() == Type::Number; }
  bool is_string() const { return type() == Type::String; }
  bool is_array() const { return type() == Type::Array; }
  bool is_object() const { return type() == Type::Object; }

  bool as_bool() const { return std::get<bool>(repr_); }
  const Number& as_number() const { return std::get<Number>(repr_); }
  const std::string& as_string() const { return *std::get<StrPtr>(repr_); }
  const Array& as_array() const { return *std::get<ArrPtr>(repr_); }
  const Object& as_object() const { return *std::get<ObjPtr>(repr_); }

  /// Truthiness: false iff null or false.
  bool truthy() const;

  friend bool operator==(const Value& l, const Value& r);
  friend std::strong_ordering operator<=>(const Value& l, const Value& r);

 private:
  using StrPtr = std::shared_ptr<const std::string>;
  using ArrPtr = std::shared_ptr<const Array>;
  using ObjPtr = std::shared_ptr<const Object>;
  std::variant<std::monostate, bool, Number, StrPtr, ArrPtr, ObjPtr> repr_;
};

enum class Ordering { Less, Equal, Greater };

/// Total order: null < false < true < numbers < strings < arrays < objects.
Ordering cmp(const Value& l, const Value& r);

/// Label identity carried by break exceptions. The name is kept for
/// diagnostics; matching is by id.
struct Label {
  std::string name;
  std::uint64_t id = 0;
  friend bool operator==(const Label&, const Label&) = default;
};

/// An error (carrying a payload value) or a break, either of which may be
/// polarised. Polarisation marks exceptions raised by the right-hand side of
/// an update so that try/catch on the left-hand side lets them through.
class Exception {
 public:
  enum class Kind { Error, Break };

  static Exception error(Value payload);
  static Exception brk(Label label);

  Kind kind() const { return kind_; }
  bool is_error() const { return kind_ == Kind::Error; }
  bool is_break() const { return kind_ == Kind::Break; }
  bool polarised() const { return polarised_; }
  const Value& payload() const { return payload_; }
  const Label& label() const { return label_; }

  Exception with_polarity(bool polarised) const;

  friend bool operator==(const Exception&, const Exception&) = default;

 private:
  Kind kind_ = Kind::Error;
  Value payload_;
  Label label_;
  bool polarised_ = false;
};

/// Either a value or an exception.
class ValueResult {
 public:
  ValueResult(Value v) : repr_(std::move(v)) {}
  ValueResult(Exception e) : repr_(std::move(e)) {}
  template <class T>
    requires std::is_constructible_v<Value, T> &&
             (!std::is_same_v<std::decay_t<T>, Value>)
  ValueResult(T&& v) : repr_(Value(std::forward<T>(v))) {}

  bool is_value() const { return repr_.index() == 0; }
  bool is_exception() const { return repr_.index() == 1; }
  const Value& value() const { return std::get<0>(repr_); }
  Value& value() { return std::get<0>(repr_); }
  const Exception& exception() const { return std::get<1>(repr_); }

  friend bool operator==(const ValueResult&, const ValueResult&) = default;

 private:
  std::variant<Value, Exception> repr_;
};

/// Convenience for building error results with a string payload.
ValueResult error_result(std::string message);

}  // namespace mjq
