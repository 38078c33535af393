#include <algorithm>
#include <cmath>
#include <functional>

#include "gen.hpp"
#include "mjq/json.hpp"
#include "mjq/value_ops.hpp"
#include "properties.hpp"
#include "run_util.hpp"

namespace mjq::testing {

namespace {

int type_rank(const Value& v) {
  switch (v.type()) {
    case Type::Null: return 0;
    case Type::Boolean: return v.as_bool() ? 2 : 1;
    case Type::Number: return 3;
    case Type::String: return 4;
    case Type::Array: return 5;
    case Type::Object: return 6;
  }
  return -1;
}

int sign(long double x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }

// Independent reference for the total order, returning -1, 0 or 1.
int oracle_cmp(const Value& l, const Value& r) {
  int a = type_rank(l);
  int b = type_rank(r);
  if (a != b) return a < b ? -1 : 1;
  switch (l.type()) {
    case Type::Null:
    case Type::Boolean: return 0;
    case Type::Number: {
      const Number& x = l.as_number();
      const Number& y = r.as_number();
      if (x.is_int() && y.is_int()) return x.as_int() < y.as_int() ? -1 : (x.as_int() > y.as_int() ? 1 : 0);
      // long double holds every int64 exactly on this platform.
      long double p = x.is_int() ? static_cast<long double>(x.as_int()) : x.as_dec();
      long double q = y.is_int() ? static_cast<long double>(y.as_int()) : y.as_dec();
      return sign(p - q);
    }
    case Type::String: {
      int c = l.as_string().compare(r.as_string());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Type::Array: {
      const Array& x = l.as_array();
      const Array& y = r.as_array();
      for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (int c = oracle_cmp(x[i], y[i])) return c;
      }
      return x.size() < y.size() ? -1 : (x.size() > y.size() ? 1 : 0);
    }
    case Type::Object: {
      Array kx, ky, vx, vy;
      for (const auto& [k, v] : l.as_object()) {
        kx.emplace_back(k);
        vx.push_back(v);
      }
      for (const auto& [k, v] : r.as_object()) {
        ky.emplace_back(k);
        vy.push_back(v);
      }
      if (int c = oracle_cmp(Value(kx), Value(ky))) return c;
      return oracle_cmp(Value(vx), Value(vy));
    }
  }
  return 0;
}

int as_int(Ordering o) { return o == Ordering::Less ? -1 : (o == Ordering::Equal ? 0 : 1); }

std::string w(const Value& v) { return write_value(v); }

Stream identity_fn(const Value& x) { return Stream(ValueResult(x)); }

}  // namespace

PropertyReport prop_cmp_total_order(std::uint64_t seed, int n) {
  PropertyReport rep{"cmp total order"};
  Gen g(seed);
  for (int i = 0; i < n; ++i) {
    Value a = gen_value(g, 2, true);
    Value b = g.chance(0.2) ? a : gen_value(g, 2, true);
    Value c = gen_value(g, 2, true);
    int ab = as_int(cmp(a, b));
    int ba = as_int(cmp(b, a));
    int bc = as_int(cmp(b, c));
    int ac = as_int(cmp(a, c));
    bool ok = ab == oracle_cmp(a, b) && ab == -ba && as_int(cmp(a, a)) == 0 && (ab == 0) == (a == b);
    if (ab <= 0 && bc <= 0) ok = ok && ac <= 0;
    if (ab >= 0 && bc >= 0) ok = ok && ac >= 0;
    rep.check(ok, w(a) + " ? " + w(b) + " ? " + w(c));
  }
  return rep;
}

PropertyReport prop_sort_idempotent(std::uint64_t seed, int n) {
  PropertyReport rep{"sort stable and idempotent"};
  Gen g(seed);
  auto less = [](const std::pair<Value, int>& x, const std::pair<Value, int>& y) {
    return cmp(x.first, y.first) == Ordering::Less;
  };
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<Value, int>> xs;
    int len = g.range(0, 8);
    for (int j = 0; j < len; ++j) xs.emplace_back(gen_value(g, 1), j);
    auto once = xs;
    std::stable_sort(once.begin(), once.end(), less);
    auto twice = once;
    std::stable_sort(twice.begin(), twice.end(), less);
    bool ok = true;
    for (std::size_t j = 0; j < once.size(); ++j) {
      ok = ok && same_bits(once[j].first, twice[j].first) && once[j].second == twice[j].second;
      if (j > 0) {
        int c = oracle_cmp(once[j - 1].first, once[j].first);
        ok = ok && c <= 0 && (c != 0 || once[j - 1].second < once[j].second);
      }
    }
    rep.check(ok, "sorting a list of " + std::to_string(len) + " values");
  }
  return rep;
}

PropertyReport prop_add_null_neutral(std::uint64_t seed, int n) {
  PropertyReport rep{"add null neutrality"};
  Gen g(seed);
  for (int i = 0; i < n; ++i) {
    Value v = gen_value(g, 3, true);
    ValueResult l = add(Value(), v);
    ValueResult r = add(v, Value());
    bool ok = l.is_value() && r.is_value() && same_bits(l.value(), v) && same_bits(r.value(), v);
    rep.check(ok, w(v));
  }
  return rep;
}

PropertyReport prop_object_right_bias(std::uint64_t seed, int n) {
  PropertyReport rep{"object right bias"};
  Gen g(seed);
  for (int i = 0; i < n; ++i) {
    Value l = gen_object(g, 2);
    Value r = gen_object(g, 2);
    ValueResult s = add(l, r);
    bool ok = s.is_value() && s.value().is_object();
    if (ok) {
      const Object& so = s.value().as_object();
      for (const auto& [k, v] : r.as_object()) ok = ok && so.count(k) && same_bits(so.at(k), v);
      for (const auto& [k, v] : l.as_object()) {
        if (!r.as_object().count(k)) ok = ok && so.count(k) && same_bits(so.at(k), v);
      }
      for (const auto& [k, v] : so) ok = ok && (l.as_object().count(k) || r.as_object().count(k));
    }
    rep.check(ok, w(l) + " + " + w(r));
  }
  return rep;
}

PropertyReport prop_split_join(std::uint64_t seed, int n) {
  PropertyReport rep{"split-join reconstruction"};
  Gen g(seed);
  auto word = [&](int lo, int hi) {
    std::string s;
    int len = g.range(lo, hi);
    for (int j = 0; j < len; ++j) s += g.chance(0.5) ? 'a' : 'b';
    return s;
  };
  for (int i = 0; i < n; ++i) {
    std::string l = word(0, 9);
    std::string r = word(1, 3);
    ValueResult d = div(Value(l), Value(r));
    bool ok = d.is_value() && d.value().is_array();
    if (ok) {
      std::string joined;
      const Array& parts = d.value().as_array();
      for (std::size_t j = 0; j < parts.size(); ++j) {
        ok = ok && parts[j].is_string() && parts[j].as_string().find(r) == std::string::npos;
        if (!ok) break;
        if (j) joined += r;
        joined += parts[j].as_string();
      }
      ok = ok && joined == l;
    }
    rep.check(ok, "\"" + l + "\" / \"" + r + "\"");
  }
  return rep;
}

PropertyReport prop_array_subtraction(std::uint64_t seed, int n) {
  PropertyReport rep{"array subtraction"};
  Gen g(seed);
  auto small = [&] {
    Array a;
    int len = g.range(0, 6);
    for (int j = 0; j < len; ++j) a.emplace_back(g.range(0, 3));
    return a;
  };
  for (int i = 0; i < n; ++i) {
    Array l = small();
    Array r = small();
    Array expected;
    for (const auto& x : l) {
      if (std::find(r.begin(), r.end(), x) == r.end()) expected.push_back(x);
    }
    ValueResult d = sub(Value(l), Value(r));
    rep.check(d.is_value() && same_bits(d.value(), Value(expected)), w(Value(l)) + " - " + w(Value(r)));
  }
  return rep;
}

PropertyReport prop_index_extension(std::uint64_t seed, int n) {
  PropertyReport rep{"index beyond the end is null"};
  Gen g(seed);
  for (int i = 0; i < n; ++i) {
    Value v = gen_array(g, 2);
    auto len = static_cast<int>(v.as_array().size());
    int k = len + g.range(0, 5);
    ValueResult x = index(v, Value(k));
    rep.check(x.is_value() && x.value().is_null(), w(v) + "[" + std::to_string(k) + "]");
  }
  return rep;
}

PropertyReport prop_update_identities(std::uint64_t seed, int n) {
  PropertyReport rep{"update operators with the identity"};
  Gen g(seed);
  for (int i = 0; i < n; ++i) {
    Value v = g.chance(0.6) ? gen_array(g, 2) : gen_object(g, 2);
    ValueResult it = upd_iterate(v, identity_fn);
    rep.check(it.is_value() && same_bits(it.value(), v), "upd_iterate " + w(v));
    if (v.is_array()) {
      auto len = static_cast<int>(v.as_array().size());
      if (len > 0) {
        int k = g.range(-len, len - 1);
        ValueResult x = upd_index(v, Value(k), identity_fn);
        rep.check(x.is_value() && same_bits(x.value(), v), "upd_index " + w(v) + " " + std::to_string(k));
      }
      int a = g.range(0, len);
      int b = g.range(a, len);
      ValueResult s = upd_slice(v, Value(a), Value(b), identity_fn);
      rep.check(s.is_value() && same_bits(s.value(), v),
                "upd_slice " + w(v) + " " + std::to_string(a) + ":" + std::to_string(b));
    } else {
      std::string k = gen_key(g);
      ValueResult x = upd_index(v, Value(k), identity_fn);
      // A missing key is created with null, the value index() reports for it.
      bool present = v.as_object().count(k) > 0;
      bool ok = x.is_value() && (present ? same_bits(x.value(), v) : x.value().as_object().at(k).is_null());
      rep.check(ok, "upd_index " + w(v) + " \"" + k + "\"");
    }
  }
  return rep;
}

PropertyReport prop_exception_propagation(std::uint64_t seed, int n) {
  PropertyReport rep{"exceptions propagate through arithmetic"};
  Gen g(seed);
  using Op = ValueResult (*)(const ValueResult&, const ValueResult&);
  const std::vector<Op> ops = {add, sub, mul, div, rem};
  for (int i = 0; i < n; ++i) {
    Op op = g.pick(ops);
    ValueResult v = gen_value(g, 2);
    ValueResult e1 = Exception::error(gen_scalar(g));
    ValueResult e2 = g.chance(0.5) ? ValueResult(Exception::brk(Label{"l", 7}))
                                   : ValueResult(Exception::error(Value("other")).with_polarity(true));
    bool ok = same_result(op(e1, v), e1) && same_result(op(v, e1), e1) && same_result(op(e1, e2), e1) &&
              same_result(op(e2, e1), e2);
    rep.check(ok, "operands " + w(v.value()));
  }
  return rep;
}

}  // namespace mjq::testing
