#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mjq/value.hpp"

namespace mjq {

class JsonError : public std::runtime_error {
 public:
  JsonError(std::size_t offset, const std::string& message)
      : std::runtime_error("malformed JSON at byte " + std::to_string(offset) + ": " + message), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Reads whitespace-separated JSON values one at a time.
class JsonReader {
 public:
  explicit JsonReader(std::string_view text) : text_(text) {}

  /// The next value, or nullopt at the end of the input. Throws JsonError.
  std::optional<Value> next();

 private:
  Value value(int depth);
  Value string_value();
  std::string string_body();
  Value number();
  void skip_space();
  void literal(std::string_view word);
  [[noreturn]] void fail(const std::string& message) const;

  std::string_view text_;
  std::size_t i_ = 0;
};

std::vector<Value> read_values(std::string_view text);

/// Compact JSON with object keys in ascending order.
std::string write_value(const Value& v);
void write_value(std::string& out, const Value& v);
void write_string(std::string& out, std::string_view s);
std::string format_number(const Number& n);

inline constexpr int kMaxJsonDepth = 10000;

}  // namespace mjq
