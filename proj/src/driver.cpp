#include "mjq/driver.hpp"

#include "mjq/parser.hpp"

namespace mjq {

namespace {

constexpr std::string_view kPrelude = R"(
def empty: ({} | .[]) as $x | .;
def true: 0 == 0;
def false: 0 != 0;
def null: {} | .[""];
def not: if . then false else true end;
def error(f): f | error;
def select(f): if f then . else empty end;
def recurse(f): ., (f | recurse(f));
def recurse: recurse(.[]?);
def first(f): label $x | f | (., break $x);
def last(f): reduce f as $x (null; $x);
def first: .[0];
def last: .[-1];
def isempty(g): first((g | false), true);
def add: reduce .[] as $x (null; . + $x);
def map(f): [.[] | f];
def values: select(. != null);
def limit(n; f):
  n as $n
  | if $n <= 0 then empty
    else label $out
      | foreach f as $item ([0, null]; [.[0] + 1, $item])
      | .[1], (if .[0] >= $n then break $out else empty end)
    end;
def to_entries: [keys as $k | {key: $k, value: .[$k]}];
def from_entries: reduce .[] as $e ({}; . + {($e.key): $e.value});
def with_entries(f): to_entries | map(f) | from_entries;
def any: reduce .[] as $x (false; . or $x);
def all: reduce .[] as $x (true; . and $x);
)";

const std::vector<Signature> kNatives = {{"error", 0}, {"keys", 0}, {"length", 0}};

std::string render_binding(const BindingError& e) {
  return std::to_string(e.pos.line) + ":" + std::to_string(e.pos.col) + ": " + e.message;
}

class Resolver {
 public:
  Resolver(const CompiledProgram& p, std::size_t visible) : p_(p), visible_(visible) {}

  FilterPtr resolve(const FilterPtr& fp) {
    if (!fp) return fp;
    const Filter& f = *fp;
    auto rebuild = [&](auto node) { return make_filter(std::move(node), f.pos); };
    if (auto x = f.as<ast::Call>()) {
      ast::Call call = *x;
      for (auto& a : call.args) a = resolve(a);
      int def = find_definition(p_, call.name, call.args.size(), visible_);
      if (def >= 0) {
        call.target = {CallTarget::Kind::Definition, def};
      } else if (auto n = find_native(call.name, call.args.size())) {
        call.target = {CallTarget::Kind::Native, static_cast<int>(*n)};
      }
      return rebuild(std::move(call));
    }
    if (auto x = f.as<ast::Paren>()) return rebuild(ast::Paren{resolve(x->inner)});
    if (auto x = f.as<ast::TryShorthand>()) return rebuild(ast::TryShorthand{resolve(x->inner)});
    if (auto x = f.as<ast::ArrayCtor>()) return rebuild(ast::ArrayCtor{resolve(x->inner)});
    if (auto x = f.as<ast::ObjectCtor>()) {
      ast::ObjectCtor obj = *x;
      for (auto& [k, v] : obj.entries) {
        k = resolve(k);
        v = resolve(v);
      }
      return rebuild(std::move(obj));
    }
    if (auto x = f.as<ast::Path>()) {
      ast::Path path = *x;
      path.base = resolve(path.base);
      for (auto& part : path.parts) {
        part.lo = resolve(part.lo);
        part.hi = resolve(part.hi);
      }
      return rebuild(std::move(path));
    }
    if (auto x = f.as<ast::Binary>()) return rebuild(ast::Binary{x->op, resolve(x->lhs), resolve(x->rhs)});
    if (auto x = f.as<ast::BindAs>()) return rebuild(ast::BindAs{resolve(x->source), x->var, resolve(x->body)});
    if (auto x = f.as<ast::Fold>()) {
      return rebuild(ast::Fold{x->kind, resolve(x->source), x->var, resolve(x->init), resolve(x->body)});
    }
    if (auto x = f.as<ast::Label>()) return rebuild(ast::Label{x->name, resolve(x->body)});
    if (auto x = f.as<ast::IfThenElse>()) {
      return rebuild(ast::IfThenElse{resolve(x->cond), resolve(x->then_branch), resolve(x->else_branch)});
    }
    if (auto x = f.as<ast::TryCatch>()) return rebuild(ast::TryCatch{resolve(x->body), resolve(x->handler)});
    return fp;
  }

 private:
  const CompiledProgram& p_;
  std::size_t visible_;
};

}  // namespace

CompileError::CompileError(std::vector<std::string> diagnostics)
    : std::runtime_error(diagnostics.empty() ? "compile error" : diagnostics.front()),
      diagnostics_(std::move(diagnostics)) {}

std::string_view prelude_source() { return kPrelude; }

const std::vector<Definition>& prelude() {
  static const std::vector<Definition> defs = parse_definitions(kPrelude);
  return defs;
}

std::vector<Signature> builtin_signatures() {
  std::vector<Signature> out = kNatives;
  for (const auto& d : prelude()) out.emplace_back(d.name, static_cast<int>(d.params.size()));
  return out;
}

void resolve_calls(CompiledProgram& p) {
  // A definition sees the ones before it and itself; the main filter sees all.
  for (std::size_t i = 0; i < p.defs.size(); ++i) p.defs[i].body = Resolver(p, i + 1).resolve(p.defs[i].body);
  p.main = Resolver(p, p.defs.size()).resolve(p.main);
}

std::shared_ptr<const CompiledProgram> compile(std::string_view text) {
  Program user;
  try {
    user = parse_program(text);
  } catch (const ParseError& e) {
    throw CompileError({e.render(text)});
  }
  auto errors = check_wellformed(user, builtin_signatures());
  if (!errors.empty()) {
    std::vector<std::string> diags;
    for (const auto& e : errors) diags.push_back(render_binding(e));
    throw CompileError(std::move(diags));
  }
  Program all;
  all.defs = prelude();
  all.defs.insert(all.defs.end(), user.defs.begin(), user.defs.end());
  all.main = user.main;
  Program lowered = lower_program(all);
  auto out = std::make_shared<CompiledProgram>();
  out->defs = std::move(lowered.defs);
  out->main = std::move(lowered.main);
  resolve_calls(*out);
  return out;
}

Stream run_program(const std::shared_ptr<const CompiledProgram>& p, const Value& input) {
  return eval(p->main, Context(p), input);
}

std::vector<ValueResult> run_text(std::string_view program, const Value& input) {
  return run_program(compile(program), input).collect();
}

}  // namespace mjq
