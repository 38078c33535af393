#include "mjq/lower.hpp"

#include <set>

namespace mjq {

namespace {

FilterPtr var(const std::string& name, SourcePos pos) { return make_filter(ast::Var{name}, pos); }
FilterPtr identity(SourcePos pos) { return make_filter(ast::Identity{}, pos); }
FilterPtr empty_call(SourcePos pos) { return make_filter(ast::Call{"empty", {}, {}}, pos); }

FilterPtr binary(BinOp op, FilterPtr l, FilterPtr r, SourcePos pos) {
  return make_filter(ast::Binary{op, std::move(l), std::move(r)}, pos);
}

FilterPtr bind(FilterPtr source, std::string name, FilterPtr body, SourcePos pos) {
  return make_filter(ast::BindAs{std::move(source), std::move(name), std::move(body)}, pos);
}

FilterPtr access(PathPart::Kind kind, FilterPtr lo, FilterPtr hi, SourcePos pos) {
  PathPart p;
  p.kind = kind;
  p.lo = std::move(lo);
  p.hi = std::move(hi);
  return make_filter(ast::Path{identity(pos), {std::move(p)}}, pos);
}

}  // namespace

std::string Lowerer::fresh_var(std::string_view hint) { return std::string(hint) + "!" + std::to_string(next_++); }

FilterPtr Lowerer::maybe_try(FilterPtr f, bool optional, SourcePos pos) {
  if (!optional) return f;
  return make_filter(ast::TryCatch{std::move(f), empty_call(pos)}, pos);
}

FilterPtr Lowerer::lower(const FilterPtr& f) {
  if (is_mir(*f)) return f;
  return lower_node(f);
}

FilterPtr Lowerer::lower_path_part(const PathPart& p, bool optional, const std::string& anchor) {
  SourcePos pos = p.lo ? p.lo->pos : p.hi ? p.hi->pos : SourcePos{};
  auto anchored = [&](const FilterPtr& f) { return binary(BinOp::Pipe, var(anchor, pos), lower(f), pos); };
  using K = PathPart::Kind;
  switch (p.kind) {
    case K::All:
      return maybe_try(access(K::All, nullptr, nullptr, pos), optional, pos);
    case K::At: {
      std::string y = fresh_var("y");
      return bind(anchored(p.lo), y, maybe_try(access(K::At, var(y, pos), nullptr, pos), optional, pos), pos);
    }
    case K::From: {
      std::string y = fresh_var("y");
      std::string z = fresh_var("z");
      FilterPtr len = maybe_try(make_filter(ast::Call{"length", {}, {}}, pos), optional, pos);
      FilterPtr acc = maybe_try(access(K::Range, var(y, pos), var(z, pos), pos), optional, pos);
      return bind(anchored(p.lo), y, bind(len, z, acc, pos), pos);
    }
    case K::Until: {
      std::string y = fresh_var("y");
      std::string z = fresh_var("z");
      FilterPtr acc = maybe_try(access(K::Range, var(z, pos), var(y, pos), pos), optional, pos);
      return bind(anchored(p.hi), y, bind(make_filter(ast::NumLit{Number(std::int64_t{0})}, pos), z, acc, pos), pos);
    }
    case K::Range: {
      std::string y = fresh_var("y");
      std::string z = fresh_var("z");
      FilterPtr acc = maybe_try(access(K::Range, var(y, pos), var(z, pos), pos), optional, pos);
      return bind(anchored(p.lo), y, bind(anchored(p.hi), z, acc, pos), pos);
    }
  }
  return nullptr;
}

FilterPtr Lowerer::lower_node(const FilterPtr& fp) {
  const Filter& f = *fp;
  SourcePos pos = f.pos;
  return std::visit(
      [&](const auto& x) -> FilterPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ast::NumLit> || std::is_same_v<T, ast::StrLit> ||
                      std::is_same_v<T, ast::Identity> || std::is_same_v<T, ast::Var> ||
                      std::is_same_v<T, ast::Break> || std::is_same_v<T, ast::CallArg>) {
          return fp;
        } else if constexpr (std::is_same_v<T, ast::Paren>) {
          return lower(x.inner);
        } else if constexpr (std::is_same_v<T, ast::TryShorthand>) {
          return make_filter(ast::TryCatch{lower(x.inner), empty_call(pos)}, pos);
        } else if constexpr (std::is_same_v<T, ast::ArrayCtor>) {
          return make_filter(ast::ArrayCtor{x.inner ? lower(x.inner) : empty_call(pos)}, pos);
        } else if constexpr (std::is_same_v<T, ast::ObjectCtor>) {
          if (x.entries.empty()) return fp;
          if (x.entries.size() == 1) {
            std::string k = fresh_var("x");
            std::string v = fresh_var("y");
            ast::ObjectCtor single;
            single.entries.emplace_back(var(k, pos), var(v, pos));
            return bind(lower(x.entries[0].first), k,
                        bind(lower(x.entries[0].second), v, make_filter(std::move(single), pos), pos), pos);
          }
          // {k1: v1, ..., kn: vn} is the sum of the singleton objects.
          FilterPtr sum;
          for (const auto& [k, v] : x.entries) {
            ast::ObjectCtor single;
            single.entries.emplace_back(k, v);
            FilterPtr s = make_filter(std::move(single), k->pos);
            sum = sum ? binary(BinOp::Add, sum, s, pos) : s;
          }
          return lower(sum);
        } else if constexpr (std::is_same_v<T, ast::Path>) {
          std::string anchor = fresh_var("x");
          std::vector<FilterPtr> parts;
          for (const auto& p : x.parts) parts.push_back(lower_path_part(p, p.optional, anchor));
          // base | p1 | (p2 | ...)
          FilterPtr tail;
          for (auto it = parts.rbegin(); it != parts.rend(); ++it) tail = tail ? binary(BinOp::Pipe, *it, tail, pos) : *it;
          FilterPtr chain = lower(x.base);
          if (tail) chain = binary(BinOp::Pipe, chain, tail, pos);
          return bind(identity(pos), anchor, chain, pos);
        } else if constexpr (std::is_same_v<T, ast::Binary>) {
          if (is_cartesian(x.op)) {
            std::string l = fresh_var("x");
            std::string r = fresh_var("y");
            return bind(lower(x.lhs), l, bind(lower(x.rhs), r, binary(x.op, var(l, pos), var(r, pos), pos), pos),
                        pos);
          }
          if (auto arith = arith_of_update(x.op)) {
            FilterPtr rhs = lower(binary(*arith, identity(pos), x.rhs, pos));
            return binary(BinOp::Update, lower(x.lhs), rhs, pos);
          }
          switch (x.op) {
            case BinOp::Assign: {
              std::string v = fresh_var("x");
              return bind(lower(x.rhs), v, binary(BinOp::Update, lower(x.lhs), var(v, pos), pos), pos);
            }
            case BinOp::AltUpdate:
              return binary(BinOp::Update, lower(x.lhs), binary(BinOp::Alt, identity(pos), lower(x.rhs), pos), pos);
            case BinOp::And:
            case BinOp::Or: {
              std::string v = fresh_var("x");
              return bind(lower(x.lhs), v, binary(x.op, var(v, pos), lower(x.rhs), pos), pos);
            }
            default:
              return binary(x.op, lower(x.lhs), lower(x.rhs), pos);
          }
        } else if constexpr (std::is_same_v<T, ast::BindAs>) {
          return bind(lower(x.source), x.var, lower(x.body), pos);
        } else if constexpr (std::is_same_v<T, ast::Fold>) {
          std::string v = fresh_var("x");
          FilterPtr source = lower(binary(BinOp::Pipe, var(v, pos), x.source, pos));
          FilterPtr fold = make_filter(ast::Fold{x.kind, source, x.var, identity(pos), lower(x.body)}, pos);
          return bind(identity(pos), v, binary(BinOp::Pipe, lower(x.init), fold, pos), pos);
        } else if constexpr (std::is_same_v<T, ast::Label>) {
          return make_filter(ast::Label{x.name, lower(x.body)}, pos);
        } else if constexpr (std::is_same_v<T, ast::IfThenElse>) {
          std::string v = fresh_var("x");
          return bind(lower(x.cond), v,
                      make_filter(ast::IfThenElse{var(v, pos), lower(x.then_branch), lower(x.else_branch)}, pos), pos);
        } else if constexpr (std::is_same_v<T, ast::TryCatch>) {
          return make_filter(ast::TryCatch{lower(x.body), lower(x.handler)}, pos);
        } else {
          static_assert(std::is_same_v<T, ast::Call>);
          std::vector<FilterPtr> args;
          for (const auto& a : x.args) args.push_back(lower(a));
          return make_filter(ast::Call{x.name, std::move(args), x.target}, pos);
        }
      },
      f.node);
}

Definition Lowerer::lower(const Definition& d) {
  Definition out = d;
  out.body = lower(d.body);
  return out;
}

Program Lowerer::lower(const Program& p) {
  Program out;
  for (const auto& d : p.defs) out.defs.push_back(lower(d));
  out.main = lower(p.main);
  return out;
}

FilterPtr lower_filter(const FilterPtr& f) { return Lowerer().lower(f); }

Program lower_program(const Program& p) { return Lowerer().lower(p); }

}  // namespace mjq
