#include "mjq/eval.hpp"

#include <atomic>

#include "mjq/update.hpp"
#include "mjq/value_ops.hpp"

namespace mjq {

struct Context::Node {
  enum class Kind { Var, Arg, Label };
  Kind kind;
  std::string name;
  Value value;
  Closure closure;
  std::uint64_t label = 0;
  std::shared_ptr<const Node> parent;
};

Context Context::bind_var(std::string name, Value v) const {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Var;
  n->name = std::move(name);
  n->value = std::move(v);
  n->parent = head_;
  return Context(program_, std::move(n));
}

Context Context::bind_arg(std::string name, FilterPtr f, Context c) const {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Arg;
  n->name = std::move(name);
  n->closure = Closure{std::move(f), std::move(c)};
  n->parent = head_;
  return Context(program_, std::move(n));
}

Context Context::bind_label(std::string name, std::uint64_t id) const {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Label;
  n->name = std::move(name);
  n->label = id;
  n->parent = head_;
  return Context(program_, std::move(n));
}

const Value* Context::var(std::string_view name) const {
  for (const Node* n = head_.get(); n; n = n->parent.get()) {
    if (n->kind == Node::Kind::Var && n->name == name) return &n->value;
  }
  return nullptr;
}

const Context::Closure* Context::arg(std::string_view name) const {
  for (const Node* n = head_.get(); n; n = n->parent.get()) {
    if (n->kind == Node::Kind::Arg && n->name == name) return &n->closure;
  }
  return nullptr;
}

std::optional<std::uint64_t> Context::label(std::string_view name) const {
  for (const Node* n = head_.get(); n; n = n->parent.get()) {
    if (n->kind == Node::Kind::Label && n->name == name) return n->label;
  }
  return std::nullopt;
}

std::uint64_t fresh_label_id() {
  static std::atomic<std::uint64_t> next{0};
  return ++next;
}

int find_definition(const CompiledProgram& p, std::string_view name, std::size_t arity, std::size_t before) {
  for (std::size_t i = std::min(before, p.defs.size()); i-- > 0;) {
    if (p.defs[i].name == name && p.defs[i].params.size() == arity) return static_cast<int>(i);
  }
  return -1;
}

std::optional<Native> find_native(std::string_view name, std::size_t arity) {
  if (arity != 0) return std::nullopt;
  if (name == "error") return Native::Error;
  if (name == "keys") return Native::Keys;
  if (name == "length") return Native::Length;
  return std::nullopt;
}

Context call_context(const Definition& d, const ast::Call& call, const Context& caller) {
  Context callee = caller.root();
  for (std::size_t i = 0; i < d.params.size(); ++i) {
    const auto* fwd = call.args[i]->as<ast::CallArg>();
    const Context::Closure* cl = fwd ? caller.arg(fwd->name) : nullptr;
    if (cl) {
      callee = callee.bind_arg(d.params[i], cl->filter, cl->ctx);
    } else {
      callee = callee.bind_arg(d.params[i], call.args[i], caller);
    }
  }
  return callee;
}

Stream trues(Stream l) {
  auto src = std::make_shared<Stream>(std::move(l));
  return Stream::generate([src]() -> std::optional<ValueResult> {
    while (auto x = src->next()) {
      if (x->is_exception() || x->value().truthy()) return x;
    }
    return std::nullopt;
  });
}

Stream ite(const ValueResult& v, const ValueResult& i, Stream t, Stream e) { return v == i ? std::move(t) : std::move(e); }

Stream junction(const ValueResult& x, bool v, Stream l) {
  ValueResult b = bool_of(x);
  if (b.is_exception()) return Stream(b);
  if (b.value().as_bool() == v) return Stream(ValueResult(Value(v)));
  return Stream::map(std::move(l), [](ValueResult r) { return bool_of(r); });
}

Stream label_scope(Stream l, std::uint64_t id) {
  auto src = std::make_shared<Stream>(std::move(l));
  auto done = std::make_shared<bool>(false);
  return Stream::generate([src, done, id]() -> std::optional<ValueResult> {
    if (*done) return std::nullopt;
    auto x = src->next();
    if (x && x->is_exception() && x->exception().is_break() && x->exception().label().id == id) {
      *done = true;
      *src = Stream();
      return std::nullopt;
    }
    return x;
  });
}

namespace {

// Depth-first traversal of the fold tree with an explicit stack, so long
// sources do not exhaust the host stack.
class FoldSource final : public Stream::Source {
 public:
  FoldSource(FoldKind kind, const Value& v, LazyList l, FoldStep step) : kind_(kind), step_(std::move(step)) {
    visit(v, std::move(l));
  }

  std::optional<ValueResult> next() override {
    for (;;) {
      if (!pending_.empty()) {
        ValueResult r = std::move(pending_.back());
        pending_.pop_back();
        return r;
      }
      if (stack_.empty()) return std::nullopt;
      Frame& top = stack_.back();
      auto y = top.outputs.next();
      if (!y) {
        stack_.pop_back();
        continue;
      }
      if (y->is_exception()) return y;
      LazyList tail = top.tail;
      visit(y->value(), std::move(tail));
    }
  }

 private:
  struct Frame {
    Stream outputs;
    LazyList tail;
  };

  // Emissions are queued in reverse order on pending_.
  void visit(const Value& acc, LazyList l) {
    const ValueResult* h = l.head();
    std::vector<ValueResult> out;
    if (kind_ == FoldKind::For) out.emplace_back(acc);
    if (!h) {
      if (kind_ == FoldKind::Reduce) out.emplace_back(acc);
    } else if (h->is_exception()) {
      out.push_back(*h);
    } else {
      stack_.push_back(Frame{step_(h->value(), acc), l.tail()});
    }
    for (auto it = out.rbegin(); it != out.rend(); ++it) pending_.push_back(std::move(*it));
  }

  FoldKind kind_;
  FoldStep step_;
  std::vector<Frame> stack_;
  std::vector<ValueResult> pending_;
};

Stream fold_list(FoldKind kind, const Value& v, LazyList l, FoldStep step) {
  return Stream(std::make_unique<FoldSource>(kind, v, std::move(l), std::move(step)));
}

}  // namespace

Stream fold_eval(FoldKind kind, const Value& v, Stream l, FoldStep step) {
  return fold_list(kind, v, LazyList(std::move(l)), std::move(step));
}

Stream foreach_eval(const Value& v, Stream l, FoldStep step) {
  auto list = std::make_shared<LazyList>(std::move(l));
  return Stream::defer([v, list, step]() -> Stream {
    const ValueResult* h = list->head();
    if (!h) return Stream::empty();
    if (h->is_exception()) return Stream(*h);
    LazyList tail = list->tail();
    Value head = h->value();
    return Stream::flat_map(step(head, v), [tail, step](ValueResult y) -> Stream {
      if (y.is_exception()) return Stream(std::move(y));
      return fold_list(FoldKind::For, y.value(), tail, step);
    });
  });
}

namespace {

ValueResult not_mir(std::string_view what) {
  return error_result("internal: " + std::string(what) + " reached evaluation without lowering");
}

ValueResult cartesian(BinOp op, const Value& l, const Value& r) {
  switch (op) {
    case BinOp::Eq: return Value(cmp(l, r) == Ordering::Equal);
    case BinOp::Ne: return Value(cmp(l, r) != Ordering::Equal);
    case BinOp::Lt: return Value(cmp(l, r) == Ordering::Less);
    case BinOp::Le: return Value(cmp(l, r) != Ordering::Greater);
    case BinOp::Gt: return Value(cmp(l, r) == Ordering::Greater);
    case BinOp::Ge: return Value(cmp(l, r) != Ordering::Less);
    case BinOp::Add: return add(l, r);
    case BinOp::Sub: return sub(l, r);
    case BinOp::Mul: return mul(l, r);
    case BinOp::Div: return div(l, r);
    case BinOp::Mod: return rem(l, r);
    default: return not_mir(spelling(op));
  }
}

const Value* var_of(const FilterPtr& f, const Context& c) {
  const auto* v = f ? f->as<ast::Var>() : nullptr;
  return v ? c.var(v->name) : nullptr;
}

ValueResult unbound(const FilterPtr& f) {
  const auto* v = f ? f->as<ast::Var>() : nullptr;
  return error_result(v ? "unbound variable $" + v->name : "internal: expected a variable");
}

Stream eval_path(const ast::Path& p, const Context& c, const Value& v) {
  if (!p.base->as<ast::Identity>() || p.parts.size() != 1 || p.parts[0].optional) return Stream(not_mir("path"));
  const PathPart& part = p.parts[0];
  switch (part.kind) {
    case PathPart::Kind::All:
      return iterate(v);
    case PathPart::Kind::At: {
      const Value* i = var_of(part.lo, c);
      if (!i) return Stream(unbound(part.lo));
      return Stream(index(v, *i));
    }
    case PathPart::Kind::Range: {
      const Value* lo = var_of(part.lo, c);
      const Value* hi = var_of(part.hi, c);
      if (!lo) return Stream(unbound(part.lo));
      if (!hi) return Stream(unbound(part.hi));
      return Stream(slice(v, *lo, *hi));
    }
    default:
      return Stream(not_mir("path"));
  }
}

Stream eval_binary(const ast::Binary& b, const Context& c, const Value& v) {
  if (is_cartesian(b.op)) {
    const Value* l = var_of(b.lhs, c);
    const Value* r = var_of(b.rhs, c);
    if (!l) return Stream(unbound(b.lhs));
    if (!r) return Stream(unbound(b.rhs));
    return Stream(cartesian(b.op, *l, *r));
  }
  FilterPtr lhs = b.lhs;
  FilterPtr rhs = b.rhs;
  switch (b.op) {
    case BinOp::Pipe:
      return Stream::and_then(eval(lhs, c, v), [rhs, c](const Value& x) { return eval(rhs, c, x); });
    case BinOp::Comma:
      return Stream::concat(eval(lhs, c, v), [rhs, c, v] { return eval(rhs, c, v); });
    case BinOp::Alt:
      return Stream::defer([lhs, rhs, c, v]() -> Stream {
        auto probe = std::make_shared<Stream>(trues(eval(lhs, c, v)));
        auto first = probe->next();
        if (!first) return eval(rhs, c, v);
        return Stream::concat(Stream(std::move(*first)), [probe] { return std::move(*probe); });
      });
    case BinOp::And:
    case BinOp::Or: {
      const Value* x = var_of(lhs, c);
      if (!x) return Stream(unbound(lhs));
      return junction(*x, b.op == BinOp::Or, Stream::defer([rhs, c, v] { return eval(rhs, c, v); }));
    }
    case BinOp::Update:
      return update_toplevel(lhs, rhs, c, v);
    default:
      return Stream(not_mir(spelling(b.op)));
  }
}

Stream eval_call(const ast::Call& call, const Context& c, const Value& v) {
  const CompiledProgram* prog = c.program();
  int def = -1;
  std::optional<Native> native;
  if (call.target.kind == CallTarget::Kind::Definition) {
    def = call.target.index;
  } else if (call.target.kind == CallTarget::Kind::Native) {
    native = static_cast<Native>(call.target.index);
  } else {
    if (prog) def = find_definition(*prog, call.name, call.args.size(), prog->defs.size());
    if (def < 0) native = find_native(call.name, call.args.size());
  }
  if (native) {
    switch (*native) {
      case Native::Error: return Stream(ValueResult(Exception::error(v)));
      case Native::Keys: return keys_of(v);
      case Native::Length: return Stream(length_of(v));
    }
  }
  if (def < 0 || !prog) {
    return Stream(error_result("undefined filter " + call.name + "/" + std::to_string(call.args.size())));
  }
  const Definition& d = prog->defs[def];
  Context callee = call_context(d, call, c);
  FilterPtr body = d.body;
  return Stream::defer([body, callee, v] { return eval(body, callee, v); });
}

}  // namespace

Stream eval(const FilterPtr& fp, const Context& c, const Value& v) {
  const Filter& f = *fp;
  if (f.as<ast::Identity>()) return Stream(ValueResult(v));
  if (auto x = f.as<ast::NumLit>()) return Stream(ValueResult(Value(x->value)));
  if (auto x = f.as<ast::StrLit>()) return Stream(ValueResult(Value(x->value)));
  if (auto x = f.as<ast::Var>()) {
    const Value* val = c.var(x->name);
    return val ? Stream(ValueResult(*val)) : Stream(unbound(fp));
  }
  if (auto x = f.as<ast::Path>()) return eval_path(*x, c, v);
  if (auto x = f.as<ast::Binary>()) return eval_binary(*x, c, v);
  if (auto x = f.as<ast::BindAs>()) {
    FilterPtr body = x->body;
    std::string name = x->var;
    return Stream::and_then(eval(x->source, c, v),
                            [body, name, c, v](const Value& y) { return eval(body, c.bind_var(name, y), v); });
  }
  if (auto x = f.as<ast::Call>()) return eval_call(*x, c, v);
  if (auto x = f.as<ast::CallArg>()) {
    const Context::Closure* cl = c.arg(x->name);
    if (!cl) return Stream(error_result("unbound filter argument " + x->name));
    FilterPtr g = cl->filter;
    Context gc = cl->ctx;
    return Stream::defer([g, gc, v] { return eval(g, gc, v); });
  }
  if (auto x = f.as<ast::IfThenElse>()) {
    const Value* cond = var_of(x->cond, c);
    if (!cond) return Stream(unbound(x->cond));
    return eval(cond->truthy() ? x->then_branch : x->else_branch, c, v);
  }
  if (auto x = f.as<ast::TryCatch>()) {
    FilterPtr handler = x->handler;
    return Stream::flat_map(eval(x->body, c, v), [handler, c](ValueResult r) -> Stream {
      if (r.is_exception()) {
        const Exception& e = r.exception();
        if (e.is_error() && !e.polarised() && !is_resource_error(r)) return eval(handler, c, e.payload());
      }
      return Stream(std::move(r));
    });
  }
  if (auto x = f.as<ast::ArrayCtor>()) {
    if (!x->inner) return Stream(ValueResult(Value(Array{})));
    FilterPtr inner = x->inner;
    return Stream::defer([inner, c, v] { return Stream(arr_of_stream(eval(inner, c, v))); });
  }
  if (auto x = f.as<ast::ObjectCtor>()) {
    if (x->entries.empty()) return Stream(ValueResult(Value(Object{})));
    if (x->entries.size() != 1) return Stream(not_mir("object construction"));
    FilterPtr val = x->entries[0].second;
    return Stream::and_then(eval(x->entries[0].first, c, v), [val, c, v](const Value& k) {
      return Stream::map(eval(val, c, v), [k](ValueResult y) -> ValueResult {
        if (y.is_exception()) return y;
        return obj_entry(k, y.value());
      });
    });
  }
  if (auto x = f.as<ast::Fold>()) {
    if (!x->init->as<ast::Identity>()) return Stream(not_mir("fold"));
    FilterPtr body = x->body;
    std::string name = x->var;
    FoldStep step = [body, name, c](const Value& elem, const Value& acc) {
      return eval(body, c.bind_var(name, elem), acc);
    };
    FoldKind kind = x->kind;
    FilterPtr source = x->source;
    return Stream::defer([kind, source, c, v, step]() -> Stream {
      if (kind == FoldKind::Foreach) return foreach_eval(v, eval(source, c, v), step);
      return fold_eval(kind, v, eval(source, c, v), step);
    });
  }
  if (auto x = f.as<ast::Label>()) {
    FilterPtr body = x->body;
    std::string name = x->name;
    return Stream::defer([body, name, c, v] {
      std::uint64_t id = fresh_label_id();
      return label_scope(eval(body, c.bind_label(name, id), v), id);
    });
  }
  if (auto x = f.as<ast::Break>()) {
    auto id = c.label(x->name);
    if (!id) return Stream(error_result("unbound label $" + x->name));
    return Stream(ValueResult(Exception::brk(Label{x->name, *id})));
  }
  if (f.as<ast::Paren>()) return Stream(not_mir("parenthesised filter"));
  return Stream(not_mir("'?' shorthand"));
}

}  // namespace mjq
