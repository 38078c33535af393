#include "mjq/value_ops.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace mjq {

namespace {

std::string tn(const Value& v) { return std::string(type_name(v.type())); }

ValueResult type_error(std::string_view op, const Value& l, const Value& r, std::string_view verbed) {
  return error_result(std::string(op) + ": " + tn(l) + " and " + tn(r) + " cannot be " + std::string(verbed));
}

std::size_t utf8_seq_len(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

// Byte offsets of every code point start, plus the total size at the end.
std::vector<std::size_t> char_offsets(std::string_view s) {
  std::vector<std::size_t> offs;
  std::size_t i = 0;
  while (i < s.size()) {
    offs.push_back(i);
    i += utf8_seq_len(static_cast<unsigned char>(s[i]));
  }
  offs.push_back(s.size());
  return offs;
}

Number num_add(const Number& a, const Number& b) {
  if (a.is_int() && b.is_int()) {
    std::int64_t out;
    if (!__builtin_add_overflow(a.as_int(), b.as_int(), &out)) return out;
  }
  return a.to_double() + b.to_double();
}

Number num_sub(const Number& a, const Number& b) {
  if (a.is_int() && b.is_int()) {
    std::int64_t out;
    if (!__builtin_sub_overflow(a.as_int(), b.as_int(), &out)) return out;
  }
  return a.to_double() - b.to_double();
}

Number num_mul(const Number& a, const Number& b) {
  if (a.is_int() && b.is_int()) {
    std::int64_t out;
    if (!__builtin_mul_overflow(a.as_int(), b.as_int(), &out)) return out;
  }
  return a.to_double() * b.to_double();
}

bool is_zero(const Number& n) { return n.is_int() ? n.as_int() == 0 : n.as_dec() == 0.0; }

ValueResult repeat_string(const std::string& s, const Number& count) {
  auto n = count.truncated();
  if (!n || *n < 0) return error_result("mul: string cannot be repeated a negative or NaN number of times");
  if (*n == 0) return Value();
  constexpr std::size_t kMaxBytes = std::size_t{1} << 30;
  if (!s.empty() && static_cast<std::uint64_t>(*n) > kMaxBytes / s.size()) {
    return error_result("mul: repeated string is too long");
  }
  std::string out;
  out.reserve(s.size() * static_cast<std::size_t>(*n));
  for (std::int64_t i = 0; i < *n; ++i) out += s;
  return Value(std::move(out));
}

// Shared index normalisation for arrays and strings: truncation toward zero,
// then one wrap of negative indices by the length.
std::optional<std::int64_t> normalise_index(const Number& i, std::size_t len) {
  auto t = i.truncated();
  if (!t) return std::nullopt;
  std::int64_t k = *t;
  if (k < 0) {
    k += static_cast<std::int64_t>(len);
    if (k < 0) return std::nullopt;
  }
  return k;
}

template <class Op>
ValueResult lift(const ValueResult& l, const ValueResult& r, Op op) {
  if (l.is_exception()) return l;
  if (r.is_exception()) return r;
  return op(l.value(), r.value());
}

}  // namespace

std::size_t utf8_length(std::string_view s) { return char_offsets(s).size() - 1; }

ValueResult add(const Value& l, const Value& r) {
  if (l.is_null()) return r;
  if (r.is_null()) return l;
  if (l.is_number() && r.is_number()) return Value(num_add(l.as_number(), r.as_number()));
  if (l.is_string() && r.is_string()) return Value(l.as_string() + r.as_string());
  if (l.is_array() && r.is_array()) {
    Array out = l.as_array();
    out.insert(out.end(), r.as_array().begin(), r.as_array().end());
    return Value(std::move(out));
  }
  if (l.is_object() && r.is_object()) {
    Object out = l.as_object();
    for (const auto& [k, v] : r.as_object()) out.insert_or_assign(k, v);
    return Value(std::move(out));
  }
  return type_error("add", l, r, "added");
}

ValueResult sub(const Value& l, const Value& r) {
  if (l.is_number() && r.is_number()) return Value(num_sub(l.as_number(), r.as_number()));
  if (l.is_array() && r.is_array()) {
    const auto& rs = r.as_array();
    Array out;
    for (const auto& x : l.as_array()) {
      bool found = false;
      for (const auto& y : rs) {
        if (x == y) {
          found = true;
          break;
        }
      }
      if (!found) out.push_back(x);
    }
    return Value(std::move(out));
  }
  return type_error("sub", l, r, "subtracted");
}

Object merge_objects(const Object& l, const Object& r) {
  Object out = l;
  for (const auto& [k, vr] : r) {
    auto it = out.find(k);
    if (it != out.end() && it->second.is_object() && vr.is_object()) {
      it->second = Value(merge_objects(it->second.as_object(), vr.as_object()));
    } else {
      out.insert_or_assign(k, vr);
    }
  }
  return out;
}

ValueResult mul(const Value& l, const Value& r) {
  if (l.is_number() && r.is_number()) return Value(num_mul(l.as_number(), r.as_number()));
  if (l.is_string() && r.is_number()) return repeat_string(l.as_string(), r.as_number());
  if (l.is_number() && r.is_string()) return repeat_string(r.as_string(), l.as_number());
  if (l.is_object() && r.is_object()) return Value(merge_objects(l.as_object(), r.as_object()));
  return type_error("mul", l, r, "multiplied");
}

Value split_str(std::string_view x, std::string_view sep) {
  Array out;
  std::size_t start = 0;
  while (true) {
    auto pos = x.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(x.substr(start));
      break;
    }
    out.emplace_back(x.substr(start, pos - start));
    start = pos + sep.size();
  }
  return Value(std::move(out));
}

ValueResult div(const Value& l, const Value& r) {
  if (l.is_number() && r.is_number()) {
    const auto& a = l.as_number();
    const auto& b = r.as_number();
    if (is_zero(b)) return error_result("div: number cannot be divided by zero");
    if (a.is_int() && b.is_int()) {
      std::int64_t x = a.as_int(), y = b.as_int();
      if (!(x == std::numeric_limits<std::int64_t>::min() && y == -1) && x % y == 0) return Value(x / y);
    }
    return Value(a.to_double() / b.to_double());
  }
  if (l.is_string() && r.is_string()) {
    const auto& s = l.as_string();
    const auto& sep = r.as_string();
    if (s.empty()) return Value(Array{});
    if (sep.empty()) {
      auto offs = char_offsets(s);
      Array out;
      for (std::size_t i = 0; i + 1 < offs.size(); ++i) out.emplace_back(s.substr(offs[i], offs[i + 1] - offs[i]));
      return Value(std::move(out));
    }
    return split_str(s, sep);
  }
  return type_error("div", l, r, "divided");
}

ValueResult rem(const Value& l, const Value& r) {
  if (l.is_number() && r.is_number()) {
    const auto& a = l.as_number();
    const auto& b = r.as_number();
    if (is_zero(b)) return error_result("rem: number cannot be divided by zero");
    if (a.is_int() && b.is_int()) {
      if (b.as_int() == -1) return Value(0);
      return Value(a.as_int() % b.as_int());
    }
    return Value(std::fmod(a.to_double(), b.to_double()));
  }
  return type_error("rem", l, r, "divided");
}

ValueResult add(const ValueResult& l, const ValueResult& r) {
  return lift(l, r, [](const Value& a, const Value& b) { return add(a, b); });
}
ValueResult sub(const ValueResult& l, const ValueResult& r) {
  return lift(l, r, [](const Value& a, const Value& b) { return sub(a, b); });
}
ValueResult mul(const ValueResult& l, const ValueResult& r) {
  return lift(l, r, [](const Value& a, const Value& b) { return mul(a, b); });
}
ValueResult div(const ValueResult& l, const ValueResult& r) {
  return lift(l, r, [](const Value& a, const Value& b) { return div(a, b); });
}
ValueResult rem(const ValueResult& l, const ValueResult& r) {
  return lift(l, r, [](const Value& a, const Value& b) { return rem(a, b); });
}

Stream keys_of(const Value& v) {
  if (v.is_array()) {
    std::int64_t n = static_cast<std::int64_t>(v.as_array().size());
    return Stream::generate([i = std::int64_t{0}, n]() mutable -> std::optional<ValueResult> {
      if (i == n) return std::nullopt;
      return Value(i++);
    });
  }
  if (v.is_object()) {
    std::vector<ValueResult> keys;
    keys.reserve(v.as_object().size());
    for (const auto& kv : v.as_object()) keys.emplace_back(Value(kv.first));
    return Stream::of(std::move(keys));
  }
  return Stream(error_result("keys: " + tn(v) + " has no keys"));
}

ValueResult length_of(const Value& v) {
  switch (v.type()) {
    case Type::Null:
      return Value(0);
    case Type::Boolean:
      return error_result("length: boolean has no length");
    case Type::Number: {
      const auto& n = v.as_number();
      if (n.is_int()) {
        if (n.as_int() == std::numeric_limits<std::int64_t>::min()) return Value(-n.to_double());
        return Value(static_cast<std::int64_t>(std::llabs(n.as_int())));
      }
      return Value(std::fabs(n.as_dec()));
    }
    case Type::String:
      return Value(static_cast<std::int64_t>(utf8_length(v.as_string())));
    case Type::Array:
      return Value(static_cast<std::int64_t>(v.as_array().size()));
    case Type::Object:
      return Value(static_cast<std::int64_t>(v.as_object().size()));
  }
  return Value();
}

ValueResult bool_of(const ValueResult& x) {
  if (x.is_exception()) return x;
  return Value(x.value().truthy());
}

ValueResult index(const Value& v, const Value& i) {
  if (v.is_array() && i.is_number()) {
    const auto& a = v.as_array();
    auto k = normalise_index(i.as_number(), a.size());
    if (!k) return error_result("index: array cannot be indexed with an out-of-range negative or NaN number");
    if (static_cast<std::uint64_t>(*k) < a.size()) return a[static_cast<std::size_t>(*k)];
    return Value();
  }
  if (v.is_object() && i.is_string()) {
    const auto& o = v.as_object();
    auto it = o.find(i.as_string());
    if (it == o.end()) return Value();
    return it->second;
  }
  return error_result("index: " + tn(v) + " cannot be indexed with " + tn(i));
}

Stream iterate(const Value& v) {
  if (v.is_array()) {
    return Stream::generate([v, i = std::size_t{0}]() mutable -> std::optional<ValueResult> {
      const auto& a = v.as_array();
      if (i == a.size()) return std::nullopt;
      return a[i++];
    });
  }
  if (v.is_object()) {
    return Stream::generate([v, it = v.as_object().begin()]() mutable -> std::optional<ValueResult> {
      if (it == v.as_object().end()) return std::nullopt;
      return (it++)->second;
    });
  }
  return Stream(error_result("iterate: " + tn(v) + " cannot be iterated"));
}

namespace {

struct SliceBounds {
  std::size_t from = 0;
  std::size_t to = 0;  // exclusive; from >= to means empty
  bool inverted = false;
};

std::optional<SliceBounds> slice_bounds(const Value& from, const Value& to, std::size_t len) {
  if (!from.is_number() || !to.is_number()) return std::nullopt;
  auto i = normalise_index(from.as_number(), len);
  auto j = normalise_index(to.as_number(), len);
  if (!i || !j) return std::nullopt;
  SliceBounds b;
  b.inverted = *i > *j;
  auto n = static_cast<std::int64_t>(len);
  b.from = static_cast<std::size_t>(std::min(*i, n));
  b.to = static_cast<std::size_t>(std::min(*j, n));
  return b;
}

}  // namespace

ValueResult slice(const Value& v, const Value& from, const Value& to) {
  if (v.is_array()) {
    const auto& a = v.as_array();
    auto b = slice_bounds(from, to, a.size());
    if (!b) return error_result("slice: array cannot be sliced with " + tn(from) + " and " + tn(to));
    if (b->from >= b->to) return Value(Array{});
    return Value(Array(a.begin() + static_cast<std::ptrdiff_t>(b->from), a.begin() + static_cast<std::ptrdiff_t>(b->to)));
  }
  if (v.is_string()) {
    const auto& s = v.as_string();
    auto offs = char_offsets(s);
    auto b = slice_bounds(from, to, offs.size() - 1);
    if (!b) return error_result("slice: string cannot be sliced with " + tn(from) + " and " + tn(to));
    if (b->from >= b->to) return Value(std::string());
    return Value(s.substr(offs[b->from], offs[b->to] - offs[b->from]));
  }
  return error_result("slice: " + tn(v) + " cannot be sliced");
}

ValueResult arr_of_stream(Stream s) {
  Array out;
  while (auto x = s.next()) {
    if (x->is_exception()) return std::move(*x);
    out.push_back(std::move(x->value()));
  }
  return Value(std::move(out));
}

ValueResult obj_entry(const Value& k, const Value& v) {
  if (!k.is_string()) return error_result("object: " + tn(k) + " cannot be used as object key");
  Object o;
  o.emplace(k.as_string(), v);
  return Value(std::move(o));
}

ValueResult head(Stream s, ValueResult fallback) {
  if (auto x = s.next()) return std::move(*x);
  return fallback;
}

ValueResult upd_iterate(const Value& v, const UpdateFn& f) {
  if (v.is_array()) {
    Array out;
    out.reserve(v.as_array().size());
    for (const auto& x : v.as_array()) {
      Stream ys = f(x);
      while (auto y = ys.next()) {
        if (y->is_exception()) return std::move(*y);
        out.push_back(std::move(y->value()));
      }
    }
    return Value(std::move(out));
  }
  if (v.is_object()) {
    Object out;
    for (const auto& [k, x] : v.as_object()) {
      auto y = f(x).next();
      if (!y) continue;
      if (y->is_exception()) return std::move(*y);
      out.emplace_hint(out.end(), k, std::move(y->value()));
    }
    return Value(std::move(out));
  }
  return error_result("update: " + tn(v) + " cannot be iterated");
}

ValueResult upd_index(const Value& v, const Value& i, const UpdateFn& f) {
  if (v.is_array() && i.is_number()) {
    const auto& a = v.as_array();
    auto k = normalise_index(i.as_number(), a.size());
    if (!k || static_cast<std::uint64_t>(*k) >= a.size()) {
      return error_result("update: array index out of range");
    }
    auto pos = static_cast<std::size_t>(*k);
    auto y = f(a[pos]).next();
    if (y && y->is_exception()) return std::move(*y);
    Array out;
    out.reserve(a.size());
    out.insert(out.end(), a.begin(), a.begin() + static_cast<std::ptrdiff_t>(pos));
    if (y) out.push_back(std::move(y->value()));
    out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(pos) + 1, a.end());
    return Value(std::move(out));
  }
  if (v.is_object() && i.is_string()) {
    const auto& o = v.as_object();
    const auto& key = i.as_string();
    auto it = o.find(key);
    auto y = f(it == o.end() ? Value() : it->second).next();
    if (y && y->is_exception()) return std::move(*y);
    Object out = o;
    if (y) {
      out.insert_or_assign(key, std::move(y->value()));
    } else {
      out.erase(key);
    }
    return Value(std::move(out));
  }
  return error_result("update: " + tn(v) + " cannot be indexed with " + tn(i));
}

ValueResult upd_slice(const Value& v, const Value& from, const Value& to, const UpdateFn& f) {
  if (!v.is_array()) return error_result("update: " + tn(v) + " cannot be sliced");
  const auto& a = v.as_array();
  auto b = slice_bounds(from, to, a.size());
  if (!b) return error_result("update: array cannot be sliced with " + tn(from) + " and " + tn(to));
  if (b->inverted) return v;
  auto mid = slice(v, Value(static_cast<std::int64_t>(b->from)), Value(static_cast<std::int64_t>(b->to)));
  auto y = head(f(mid.value()), Value(Array{}));
  if (y.is_exception()) return y;
  if (!y.value().is_array()) {
    return error_result("update: slice replacement must be an array, not " + tn(y.value()));
  }
  Array out(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(b->from));
  const auto& repl = y.value().as_array();
  out.insert(out.end(), repl.begin(), repl.end());
  out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(b->to), a.end());
  return Value(std::move(out));
}

}  // namespace mjq
