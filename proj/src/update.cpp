#include "mjq/update.hpp"

namespace mjq {

ValueResult polarise(const ValueResult& x) {
  if (x.is_value()) return x;
  return x.exception().with_polarity(true);
}

ValueResult depolarise(const ValueResult& x) {
  if (x.is_value()) return x;
  return x.exception().with_polarity(false);
}

Stream update_toplevel(const FilterPtr& f, const FilterPtr& g, const Context& c, const Value& v) {
  UpdateFn sigma = [g, c](const Value& x) { return Stream::map(eval(g, c, x), polarise); };
  return Stream::map(update(f, sigma, c, v), depolarise);
}

Stream catch_update(const ValueResult& x, const FilterPtr& g, const Context& c, const Value& v) {
  if (!x.is_exception()) return Stream(x);
  const Exception& e = x.exception();
  if (!e.is_error() || e.polarised() || is_resource_error(x)) return Stream(x);
  auto outputs = std::make_shared<Stream>(eval(g, c, e.payload()));
  auto first = outputs->next();
  if (!first) return Stream(ValueResult(v));
  auto to_error = [](ValueResult y) -> ValueResult {
    if (y.is_exception()) return y;
    return Exception::error(y.value());
  };
  return Stream::concat(Stream(to_error(std::move(*first))),
                        [outputs, to_error] { return Stream::map(std::move(*outputs), to_error); });
}

namespace {

Stream fold_update_list(FoldKind kind, const Value& v, const LazyList& l, const UpdateStep& step,
                        const UpdateFn& sigma) {
  const ValueResult* h = l.head();
  if (!h) return sigma(v);
  if (h->is_exception()) return Stream(*h);
  Value head = h->value();
  LazyList tail = l.tail();
  UpdateFn next = [kind, tail, step, sigma](const Value& x) { return fold_update_list(kind, x, tail, step, sigma); };
  Stream starts = kind == FoldKind::Reduce ? Stream(ValueResult(v)) : sigma(v);
  return Stream::flat_map(std::move(starts), [step, head, next](ValueResult y) -> Stream {
    if (y.is_exception()) return Stream(std::move(y));
    return step(head, next, y.value());
  });
}

ValueResult not_a_path(const std::string& what) { return error_result(what + " is not a valid path expression"); }

std::string describe_native(Native n) {
  switch (n) {
    case Native::Error: return "error";
    case Native::Keys: return "keys";
    case Native::Length: return "length";
  }
  return "builtin";
}

Stream update_path(const ast::Path& p, const UpdateFn& sigma, const Context& c, const Value& v) {
  if (!p.base->as<ast::Identity>() || p.parts.size() != 1 || p.parts[0].optional) {
    return Stream(error_result("internal: path reached update without lowering"));
  }
  const PathPart& part = p.parts[0];
  auto var = [&](const FilterPtr& f) -> const Value* {
    const auto* x = f ? f->as<ast::Var>() : nullptr;
    return x ? c.var(x->name) : nullptr;
  };
  switch (part.kind) {
    case PathPart::Kind::All:
      return Stream(upd_iterate(v, sigma));
    case PathPart::Kind::At: {
      const Value* i = var(part.lo);
      if (!i) return Stream(error_result("internal: unbound index variable"));
      return Stream(upd_index(v, *i, sigma));
    }
    case PathPart::Kind::Range: {
      const Value* lo = var(part.lo);
      const Value* hi = var(part.hi);
      if (!lo || !hi) return Stream(error_result("internal: unbound slice variable"));
      return Stream(upd_slice(v, *lo, *hi, sigma));
    }
    default:
      return Stream(error_result("internal: path reached update without lowering"));
  }
}

Stream update_call(const ast::Call& call, const UpdateFn& sigma, const Context& c, const Value& v) {
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
    // Exceptions raised by the builtin pass through; values do not designate
    // positions in the input.
    std::string name = describe_native(*native);
    FilterPtr self = make_filter(call);
    return Stream::map(eval(self, c, v), [name](ValueResult r) -> ValueResult {
      if (r.is_exception()) return r;
      return not_a_path(name);
    });
  }
  if (def < 0 || !prog) {
    return Stream(error_result("undefined filter " + call.name + "/" + std::to_string(call.args.size())));
  }
  const Definition& d = prog->defs[def];
  Context callee = call_context(d, call, c);
  FilterPtr body = d.body;
  return Stream::defer([body, sigma, callee, v] { return update(body, sigma, callee, v); });
}

Stream update_binary(const ast::Binary& b, const UpdateFn& sigma, const Context& c, const Value& v) {
  FilterPtr lhs = b.lhs;
  FilterPtr rhs = b.rhs;
  switch (b.op) {
    case BinOp::Pipe: {
      UpdateFn inner = [rhs, sigma, c](const Value& x) { return update(rhs, sigma, c, x); };
      return update(lhs, inner, c, v);
    }
    case BinOp::Comma:
      return Stream::flat_map(update(lhs, sigma, c, v), [rhs, sigma, c](ValueResult x) -> Stream {
        if (x.is_exception()) return Stream(std::move(x));
        return update(rhs, sigma, c, x.value());
      });
    case BinOp::Alt:
      return Stream::defer([lhs, rhs, sigma, c, v]() -> Stream {
        Stream probe = trues(eval(lhs, c, v));
        if (probe.next()) return update(lhs, sigma, c, v);
        return update(rhs, sigma, c, v);
      });
    default:
      break;
  }
  if (is_cartesian(b.op)) return Stream(not_a_path("'" + std::string(spelling(b.op)) + "' operation"));
  return Stream(not_a_path("'" + std::string(spelling(b.op)) + "'"));
}

}  // namespace

Stream fold_update(FoldKind kind, const Value& v, Stream l, UpdateStep step, UpdateFn sigma) {
  return fold_update_list(kind, v, LazyList(std::move(l)), step, sigma);
}

Stream foreach_update(const Value& v, Stream l, UpdateStep step, UpdateFn sigma) {
  LazyList list(std::move(l));
  const ValueResult* h = list.head();
  if (!h) return Stream(ValueResult(v));
  if (h->is_exception()) return Stream(*h);
  LazyList tail = list.tail();
  UpdateFn next = [tail, step, sigma](const Value& x) {
    return fold_update_list(FoldKind::For, x, tail, step, sigma);
  };
  return step(h->value(), next, v);
}

Stream update(const FilterPtr& mu, const UpdateFn& sigma, const Context& c, const Value& v) {
  const Filter& f = *mu;
  if (f.as<ast::Identity>()) return sigma(v);
  if (auto x = f.as<ast::Binary>()) return update_binary(*x, sigma, c, v);
  if (auto x = f.as<ast::Path>()) {
    ast::Path p = *x;
    return Stream::defer([p, sigma, c, v] { return update_path(p, sigma, c, v); });
  }
  if (auto x = f.as<ast::BindAs>()) {
    FilterPtr body = x->body;
    std::string name = x->var;
    FoldStep step = [body, name, sigma, c](const Value& elem, const Value& acc) {
      return update(body, sigma, c.bind_var(name, elem), acc);
    };
    return fold_eval(FoldKind::Reduce, v, eval(x->source, c, v), step);
  }
  if (auto x = f.as<ast::IfThenElse>()) {
    const auto* cond = x->cond->as<ast::Var>();
    const Value* b = cond ? c.var(cond->name) : nullptr;
    if (!b) return Stream(error_result("internal: if condition is not a bound variable"));
    return update(b->truthy() ? x->then_branch : x->else_branch, sigma, c, v);
  }
  if (auto x = f.as<ast::TryCatch>()) {
    FilterPtr handler = x->handler;
    return Stream::flat_map(update(x->body, sigma, c, v),
                            [handler, c, v](ValueResult r) { return catch_update(r, handler, c, v); });
  }
  if (auto x = f.as<ast::Break>()) {
    auto id = c.label(x->name);
    if (!id) return Stream(error_result("unbound label $" + x->name));
    return Stream(ValueResult(Exception::brk(Label{x->name, *id})));
  }
  if (auto x = f.as<ast::Fold>()) {
    if (!x->init->as<ast::Identity>()) return Stream(error_result("internal: fold reached update without lowering"));
    FilterPtr body = x->body;
    std::string name = x->var;
    UpdateStep step = [body, name, c](const Value& elem, const UpdateFn& s, const Value& acc) {
      return update(body, s, c.bind_var(name, elem), acc);
    };
    FoldKind kind = x->kind;
    FilterPtr source = x->source;
    return Stream::defer([kind, source, step, sigma, c, v]() -> Stream {
      if (kind == FoldKind::Foreach) return foreach_update(v, eval(source, c, v), step, sigma);
      return fold_update(kind, v, eval(source, c, v), step, sigma);
    });
  }
  if (auto x = f.as<ast::Call>()) return update_call(*x, sigma, c, v);
  if (auto x = f.as<ast::CallArg>()) {
    const Context::Closure* cl = c.arg(x->name);
    if (!cl) return Stream(error_result("unbound filter argument " + x->name));
    FilterPtr g = cl->filter;
    Context gc = cl->ctx;
    return Stream::defer([g, sigma, gc, v] { return update(g, sigma, gc, v); });
  }
  if (f.as<ast::NumLit>()) return Stream(not_a_path("number literal"));
  if (f.as<ast::StrLit>()) return Stream(not_a_path("string literal"));
  if (auto x = f.as<ast::Var>()) return Stream(not_a_path("variable $" + x->name));
  if (f.as<ast::ArrayCtor>()) return Stream(not_a_path("array construction"));
  if (f.as<ast::ObjectCtor>()) return Stream(not_a_path("object construction"));
  if (f.as<ast::Label>()) return Stream(not_a_path("label"));
  return Stream(error_result("internal: filter reached update without lowering"));
}

}  // namespace mjq
