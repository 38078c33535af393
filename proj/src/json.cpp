#include "mjq/json.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace mjq {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Length of the well-formed UTF-8 sequence starting at s[i], or 0.
std::size_t utf8_sequence(std::string_view s, std::size_t i) {
  auto byte = [&](std::size_t k) -> unsigned { return i + k < s.size() ? static_cast<unsigned char>(s[i + k]) : 0; };
  auto cont = [&](std::size_t k) { return (byte(k) & 0xC0) == 0x80; };
  unsigned b = byte(0);
  if (b < 0x80) return 1;
  if (b >= 0xC2 && b <= 0xDF) return cont(1) ? 2 : 0;
  if (b >= 0xE0 && b <= 0xEF) {
    unsigned b1 = byte(1);
    if (b == 0xE0 && b1 < 0xA0) return 0;
    if (b == 0xED && b1 >= 0xA0) return 0;  // surrogates
    return cont(1) && cont(2) ? 3 : 0;
  }
  if (b >= 0xF0 && b <= 0xF4) {
    unsigned b1 = byte(1);
    if (b == 0xF0 && b1 < 0x90) return 0;
    if (b == 0xF4 && b1 >= 0x90) return 0;
    return cont(1) && cont(2) && cont(3) ? 4 : 0;
  }
  return 0;
}

}  // namespace

void JsonReader::fail(const std::string& message) const { throw JsonError(i_, message); }

void JsonReader::skip_space() {
  while (i_ < text_.size() && is_space(text_[i_])) ++i_;
}

std::optional<Value> JsonReader::next() {
  skip_space();
  if (i_ >= text_.size()) return std::nullopt;
  return value(0);
}

void JsonReader::literal(std::string_view word) {
  if (text_.substr(i_, word.size()) != word) fail("invalid literal");
  i_ += word.size();
}

Value JsonReader::value(int depth) {
  if (depth > kMaxJsonDepth) fail("nesting too deep");
  skip_space();
  if (i_ >= text_.size()) fail("unexpected end of input");
  char c = text_[i_];
  switch (c) {
    case 'n': literal("null"); return Value(nullptr);
    case 't': literal("true"); return Value(true);
    case 'f': literal("false"); return Value(false);
    case '"': return string_value();
    case '[': {
      ++i_;
      Array arr;
      skip_space();
      if (i_ < text_.size() && text_[i_] == ']') {
        ++i_;
        return Value(std::move(arr));
      }
      for (;;) {
        arr.push_back(value(depth + 1));
        skip_space();
        if (i_ >= text_.size()) fail("unterminated array");
        if (text_[i_] == ',') {
          ++i_;
          continue;
        }
        if (text_[i_] != ']') fail("expected ',' or ']'");
        ++i_;
        return Value(std::move(arr));
      }
    }
    case '{': {
      ++i_;
      Object obj;
      skip_space();
      if (i_ < text_.size() && text_[i_] == '}') {
        ++i_;
        return Value(std::move(obj));
      }
      for (;;) {
        skip_space();
        if (i_ >= text_.size() || text_[i_] != '"') fail("expected an object key");
        std::string key = string_body();
        skip_space();
        if (i_ >= text_.size() || text_[i_] != ':') fail("expected ':'");
        ++i_;
        obj.insert_or_assign(std::move(key), value(depth + 1));
        skip_space();
        if (i_ >= text_.size()) fail("unterminated object");
        if (text_[i_] == ',') {
          ++i_;
          continue;
        }
        if (text_[i_] != '}') fail("expected ',' or '}'");
        ++i_;
        return Value(std::move(obj));
      }
    }
    default:
      if (c == '-' || is_digit(c)) return number();
      fail("unexpected character");
  }
}

Value JsonReader::number() {
  std::size_t start = i_;
  bool integral = true;
  if (text_[i_] == '-') ++i_;
  if (i_ >= text_.size() || !is_digit(text_[i_])) fail("invalid number");
  if (text_[i_] == '0') {
    ++i_;
    if (i_ < text_.size() && is_digit(text_[i_])) fail("leading zero in number");
  } else {
    while (i_ < text_.size() && is_digit(text_[i_])) ++i_;
  }
  if (i_ < text_.size() && text_[i_] == '.') {
    integral = false;
    ++i_;
    if (i_ >= text_.size() || !is_digit(text_[i_])) fail("invalid number fraction");
    while (i_ < text_.size() && is_digit(text_[i_])) ++i_;
  }
  if (i_ < text_.size() && (text_[i_] == 'e' || text_[i_] == 'E')) {
    integral = false;
    ++i_;
    if (i_ < text_.size() && (text_[i_] == '+' || text_[i_] == '-')) ++i_;
    if (i_ >= text_.size() || !is_digit(text_[i_])) fail("invalid number exponent");
    while (i_ < text_.size() && is_digit(text_[i_])) ++i_;
  }
  std::string_view s = text_.substr(start, i_ - start);
  if (integral) {
    std::int64_t n = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec == std::errc() && ptr == s.data() + s.size()) return Value(n);
  }
  std::string copy(s);
  return Value(Number(std::strtod(copy.c_str(), nullptr)));
}

Value JsonReader::string_value() { return Value(string_body()); }

std::string JsonReader::string_body() {
  ++i_;  // opening quote
  std::string out;
  auto hex4 = [&]() -> char32_t {
    if (i_ + 4 > text_.size()) fail("truncated \\u escape");
    char32_t v = 0;
    for (int k = 0; k < 4; ++k) {
      char h = text_[i_++];
      unsigned d;
      if (h >= '0' && h <= '9') d = h - '0';
      else if (h >= 'a' && h <= 'f') d = h - 'a' + 10;
      else if (h >= 'A' && h <= 'F') d = h - 'A' + 10;
      else fail("invalid \\u escape");
      v = v * 16 + d;
    }
    return v;
  };
  for (;;) {
    if (i_ >= text_.size()) fail("unterminated string");
    char c = text_[i_];
    if (c == '"') {
      ++i_;
      return out;
    }
    if (static_cast<unsigned char>(c) < 0x20) fail("control character in string");
    if (c == '\\') {
      ++i_;
      if (i_ >= text_.size()) fail("unterminated string");
      char e = text_[i_++];
      switch (e) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case '/': out += '/'; break;
        case 'b': out += '\b'; break;
        case 'f': out += '\f'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 't': out += '\t'; break;
        case 'u': {
          char32_t cp = hex4();
          if (cp >= 0xD800 && cp < 0xDC00) {
            if (text_.substr(i_, 2) != "\\u") fail("unpaired surrogate");
            i_ += 2;
            char32_t lo = hex4();
            if (lo < 0xDC00 || lo >= 0xE000) fail("unpaired surrogate");
            cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
          } else if (cp >= 0xDC00 && cp < 0xE000) {
            fail("unpaired surrogate");
          }
          append_utf8(out, cp);
          break;
        }
        default:
          --i_;
          fail("invalid escape");
      }
      continue;
    }
    std::size_t n = utf8_sequence(text_, i_);
    if (n == 0) fail("invalid UTF-8");
    out.append(text_.substr(i_, n));
    i_ += n;
  }
}

std::vector<Value> read_values(std::string_view text) {
  JsonReader reader(text);
  std::vector<Value> out;
  while (auto v = reader.next()) out.push_back(std::move(*v));
  return out;
}

std::string format_number(const Number& n) {
  if (n.is_int()) return std::to_string(n.as_int());
  double d = n.as_dec();
  if (std::isnan(d)) return "null";
  if (std::isinf(d)) d = d > 0 ? std::numeric_limits<double>::max() : std::numeric_limits<double>::lowest();
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d);
  (void)ec;
  std::string s(buf, ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

void write_string(std::string& out, std::string_view s) {
  static constexpr char kHex[] = "0123456789abcdef";
  out += '"';
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (u < 0x20 || u == 0x7F) {
          out += "\\u00";
          out += kHex[u >> 4];
          out += kHex[u & 0xF];
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void write_value(std::string& out, const Value& v) {
  switch (v.type()) {
    case Type::Null: out += "null"; break;
    case Type::Boolean: out += v.as_bool() ? "true" : "false"; break;
    case Type::Number: out += format_number(v.as_number()); break;
    case Type::String: write_string(out, v.as_string()); break;
    case Type::Array: {
      out += '[';
      bool first = true;
      for (const auto& x : v.as_array()) {
        if (!first) out += ',';
        first = false;
        write_value(out, x);
      }
      out += ']';
      break;
    }
    case Type::Object: {
      out += '{';
      bool first = true;
      for (const auto& [k, x] : v.as_object()) {
        if (!first) out += ',';
        first = false;
        write_string(out, k);
        out += ':';
        write_value(out, x);
      }
      out += '}';
      break;
    }
  }
}

std::string write_value(const Value& v) {
  std::string out;
  write_value(out, v);
  return out;
}

}  // namespace mjq
