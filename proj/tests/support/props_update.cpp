#include <utility>

#include "gen.hpp"
#include "mjq/driver.hpp"
#include "mjq/json.hpp"
#include "mjq/update.hpp"
#include "properties.hpp"
#include "run_util.hpp"

namespace mjq::testing {

namespace {

bool any_polarised(const std::vector<ValueResult>& rs) {
  for (const auto& r : rs) {
    if (r.is_exception() && r.exception().polarised()) return true;
  }
  return false;
}

// A path that rebinds $x, in two spellings: binders inside it use $x, or are
// renamed apart to $z. References to an enclosing $x stay as they are.
std::pair<std::string, std::string> rebinding_path(Gen& g, int depth, bool inner_bound) {
  if (depth <= 0 || g.chance(0.3)) {
    switch (g.range(0, 3)) {
      case 0: return {".", "."};
      case 1: return {".[]", ".[]"};
      default: return {".[$x]", inner_bound ? ".[$z]" : ".[$x]"};
    }
  }
  static const std::vector<std::string> keys = {"0", "1", "-1", "\"a\"", "(0, 1)"};
  switch (g.range(0, 3)) {
    case 0: {
      std::string k = g.pick(keys);
      auto [a, b] = rebinding_path(g, depth - 1, true);
      return {"(" + k + " as $x | " + a + ")", "(" + k + " as $z | " + b + ")"};
    }
    case 1: {
      auto [a1, b1] = rebinding_path(g, depth - 1, inner_bound);
      auto [a2, b2] = rebinding_path(g, depth - 1, inner_bound);
      return {"(" + a1 + " | " + a2 + ")", "(" + b1 + " | " + b2 + ")"};
    }
    case 2: {
      auto [a1, b1] = rebinding_path(g, depth - 1, inner_bound);
      auto [a2, b2] = rebinding_path(g, depth - 1, inner_bound);
      return {"(" + a1 + ", " + a2 + ")", "(" + b1 + ", " + b2 + ")"};
    }
    default: {
      std::string k = g.pick(keys);
      auto [a, b] = rebinding_path(g, depth - 1, true);
      return {"reduce " + k + " as $x (.; " + a + ")", "reduce " + k + " as $z (.; " + b + ")"};
    }
  }
}

}  // namespace

PropertyReport prop_update_laws(std::uint64_t seed, int n) {
  PropertyReport rep{"update laws"};
  Gen g(seed);
  for (int i = 0; i < n; ++i) {
    std::string s = gen_filter(g, 2);
    Value v = gen_value(g, 3);
    std::string lhs, rhs;
    int law = i % 6;
    switch (law) {
      case 0:
        lhs = ". |= " + s;
        rhs = s;
        break;
      case 1:
        lhs = "empty |= " + s;
        rhs = ".";
        break;
      case 2: {
        std::string f = gen_path(g, 2, {}, false);
        std::string h = gen_path(g, 2, {}, false);
        lhs = "(" + f + " | " + h + ") |= " + s;
        rhs = f + " |= (" + h + " |= " + s + ")";
        break;
      }
      case 3: {
        std::string f = gen_path(g, 2);
        std::string h = gen_path(g, 2);
        lhs = "(" + f + ", " + h + ") |= " + s;
        rhs = "(" + f + " |= " + s + ") | (" + h + " |= " + s + ")";
        break;
      }
      case 4: {
        std::string c = gen_filter(g, 1);
        std::string f = gen_path(g, 2);
        std::string h = gen_path(g, 2);
        lhs = "(" + c + ") as $c | (if $c then " + f + " else " + h + " end) |= " + s;
        rhs = "(" + c + ") as $c | if $c then (" + f + " |= " + s + ") else (" + h + " |= " + s + ") end";
        break;
      }
      default: {
        std::string f = gen_path(g, 2);
        std::string h = gen_path(g, 2);
        auto probe = run_or_fail(rep, f, v);
        if (!probe) continue;
        bool taken = false;
        for (const auto& x : *probe) taken = taken || x.is_exception() || x.value().truthy();
        lhs = "(" + f + " // " + h + ") |= " + s;
        rhs = (taken ? f : h) + " |= " + s;
        break;
      }
    }
    auto a = run_or_fail(rep, lhs, v);
    auto b = run_or_fail(rep, rhs, v);
    if (!a || !b) continue;
    rep.check(same_stream(*a, *b), lhs + "  vs  " + rhs + " on " + write_value(v) + ": " + show(*a) + " vs " + show(*b));
  }
  return rep;
}

PropertyReport prop_no_polarised_escape(std::uint64_t seed, int n) {
  PropertyReport rep{"no polarised exception escapes an update"};
  Gen g(seed);
  for (int i = 0; i < n; ++i) {
    std::string p = gen_path(g, 3);
    std::string s = g.chance(0.5) ? gen_filter(g, 2) : "error(\"s\")";
    std::string program;
    switch (g.range(0, 3)) {
      case 0: program = p + " |= " + s; break;
      case 1: program = "try (" + p + " |= " + s + ") catch ."; break;
      case 2: program = p + " |= (" + gen_path(g, 2) + " |= " + s + ")"; break;
      default: program = "[" + p + " |= " + s + "]"; break;
    }
    Value v = gen_value(g, 3);
    auto got = run_or_fail(rep, program, v);
    if (!got) continue;
    rep.check(!any_polarised(*got), program + " on " + write_value(v) + ": " + show(*got));
  }
  return rep;
}

PropertyReport prop_context_isolation(std::uint64_t seed, int n) {
  PropertyReport rep{"update right-hand side ignores bindings made in the path"};
  Gen g(seed);
  static const std::vector<std::string> outer = {"0", "1", "-1", "\"a\"", "\"b\""};
  static const std::vector<std::string> sigmas = {"$x", "[$x, .]", "{k: $x}", "($x, $x)"};
  for (int i = 0; i < n; ++i) {
    auto [mu, renamed] = rebinding_path(g, 3, false);
    std::string x = g.pick(outer);
    std::string s = g.pick(sigmas);
    Value v = g.chance(0.5) ? gen_array(g, 2) : gen_object(g, 2);
    std::string a_src = x + " as $x | " + mu + " |= " + s;
    std::string b_src = x + " as $x | " + renamed + " |= " + s;
    auto a = run_or_fail(rep, a_src, v);
    auto b = run_or_fail(rep, b_src, v);
    if (!a || !b) continue;
    rep.check(same_stream(*a, *b), a_src + " on " + write_value(v) + ": " + show(*a) + " vs " + show(*b));
  }
  return rep;
}

PropertyReport prop_sigma_errors_uncaught(std::uint64_t seed, int n) {
  PropertyReport rep{"errors from the right-hand side are not caught in the path"};
  Gen g(seed);
  static const std::vector<std::string> fixed_paths = {".[]?", "try .[] catch empty", "try (.[] | .[]) catch empty",
                                                       "(.[] | .[]?)", "try .a catch empty", ".[0]?"};
  static const std::vector<Value> fixed_inputs = {Value(Object{}), read_values("[[]]").at(0),
                                                  read_values("{\"k\":{}}").at(0), read_values("[1]").at(0),
                                                  read_values("{\"k\":[1]}").at(0)};
  for (int i = 0; i < n; ++i) {
    std::string mu = g.chance(0.5) ? g.pick(fixed_paths) : gen_path(g, 3);
    Value v = g.chance(0.3) ? g.pick(fixed_inputs) : gen_value(g, 3);
    std::shared_ptr<const CompiledProgram> p;
    try {
      p = compile(mu);
    } catch (const CompileError& e) {
      rep.check(false, mu + " does not compile: " + e.what());
      continue;
    }
    int calls = 0;
    UpdateFn sigma = [&calls](const Value&) {
      ++calls;
      return Stream(polarise(Exception::error(Value("sigma"))));
    };
    std::vector<ValueResult> out;
    for (auto& r : Stream::map(update(p->main, sigma, Context(p), v), depolarise).collect()) out.push_back(r);
    bool raised = false;
    for (const auto& r : out) {
      raised = raised || (r.is_exception() && r.exception().is_error() && r.exception().payload() == Value("sigma"));
    }
    rep.check(raised == (calls > 0), mu + " on " + write_value(v) + " with " + std::to_string(calls) +
                                         " calls: " + show(out));
  }
  return rep;
}

PropertyReport prop_update_map_coherence(std::uint64_t seed, int n) {
  PropertyReport rep{"updating every element agrees with mapping"};
  Gen g(seed);
  static const std::vector<std::string> fns = {"[.]", "{a: .}", ". == 1", "[., .]", "\"s\"", "null", "([.] | length)",
                                               "{(\"k\"): [.]}"};
  for (int i = 0; i < n; ++i) {
    Value v = gen_array(g, 2);
    std::string h = g.pick(fns);
    Array expected;
    bool ok = true;
    for (const auto& x : v.as_array()) {
      auto ys = run_or_fail(rep, h, x);
      if (!ys || ys->size() != 1 || !ys->front().is_value()) {
        ok = false;
        break;
      }
      expected.push_back(ys->front().value());
    }
    auto got = run_or_fail(rep, ".[] |= " + h, v);
    if (!got) continue;
    ok = ok && got->size() == 1 && got->front().is_value() && same_bits(got->front().value(), Value(expected));
    rep.check(ok, ".[] |= " + h + " on " + write_value(v) + ": " + show(*got));
  }
  return rep;
}

}  // namespace mjq::testing
