#include "mjq/ast.hpp"

#include <cstring>

namespace mjq {

bool is_cartesian(BinOp op) { return op >= BinOp::Eq; }

std::optional<BinOp> arith_of_update(BinOp op) {
  switch (op) {
    case BinOp::AddUpdate: return BinOp::Add;
    case BinOp::SubUpdate: return BinOp::Sub;
    case BinOp::MulUpdate: return BinOp::Mul;
    case BinOp::DivUpdate: return BinOp::Div;
    case BinOp::ModUpdate: return BinOp::Mod;
    default: return std::nullopt;
  }
}

std::string_view spelling(BinOp op) {
  switch (op) {
    case BinOp::Pipe: return "|";
    case BinOp::Comma: return ",";
    case BinOp::Assign: return "=";
    case BinOp::Update: return "|=";
    case BinOp::AddUpdate: return "+=";
    case BinOp::SubUpdate: return "-=";
    case BinOp::MulUpdate: return "*=";
    case BinOp::DivUpdate: return "/=";
    case BinOp::ModUpdate: return "%=";
    case BinOp::AltUpdate: return "//=";
    case BinOp::Alt: return "//";
    case BinOp::Or: return "or";
    case BinOp::And: return "and";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Mod: return "%";
  }
  return "?";
}

namespace {

bool same(const FilterPtr& a, const FilterPtr& b) {
  if (!a || !b) return !a && !b;
  return same_structure(*a, *b);
}

bool same_number(const Number& a, const Number& b) {
  if (a.is_int() != b.is_int()) return false;
  if (a.is_int()) return a.as_int() == b.as_int();
  double x = a.as_dec(), y = b.as_dec();
  return std::memcmp(&x, &y, sizeof x) == 0;
}

bool same_part(const PathPart& a, const PathPart& b) {
  return a.kind == b.kind && a.optional == b.optional && same(a.lo, b.lo) && same(a.hi, b.hi);
}

bool is_var(const FilterPtr& f) { return f && f->as<ast::Var>(); }
bool mir(const FilterPtr& f) { return f && is_mir(*f); }

}  // namespace

const Filter& strip_parens(const Filter& f) {
  const Filter* p = &f;
  while (auto paren = p->as<ast::Paren>()) p = paren->inner.get();
  return *p;
}

bool same_structure(const Filter& fa, const Filter& fb) {
  const Filter& a = strip_parens(fa);
  const Filter& b = strip_parens(fb);
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, ast::NumLit>) {
          return same_number(x.value, y.value);
        } else if constexpr (std::is_same_v<T, ast::StrLit>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, ast::Identity>) {
          return true;
        } else if constexpr (std::is_same_v<T, ast::Paren> || std::is_same_v<T, ast::TryShorthand> ||
                             std::is_same_v<T, ast::ArrayCtor>) {
          return same(x.inner, y.inner);
        } else if constexpr (std::is_same_v<T, ast::ObjectCtor>) {
          if (x.entries.size() != y.entries.size()) return false;
          for (std::size_t i = 0; i < x.entries.size(); ++i) {
            if (!same(x.entries[i].first, y.entries[i].first) || !same(x.entries[i].second, y.entries[i].second)) {
              return false;
            }
          }
          return true;
        } else if constexpr (std::is_same_v<T, ast::Path>) {
          if (!same(x.base, y.base) || x.parts.size() != y.parts.size()) return false;
          for (std::size_t i = 0; i < x.parts.size(); ++i) {
            if (!same_part(x.parts[i], y.parts[i])) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, ast::Binary>) {
          return x.op == y.op && same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
        } else if constexpr (std::is_same_v<T, ast::BindAs>) {
          return x.var == y.var && same(x.source, y.source) && same(x.body, y.body);
        } else if constexpr (std::is_same_v<T, ast::Fold>) {
          return x.kind == y.kind && x.var == y.var && same(x.source, y.source) && same(x.init, y.init) &&
                 same(x.body, y.body);
        } else if constexpr (std::is_same_v<T, ast::Var> || std::is_same_v<T, ast::Break> ||
                             std::is_same_v<T, ast::CallArg>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, ast::Label>) {
          return x.name == y.name && same(x.body, y.body);
        } else if constexpr (std::is_same_v<T, ast::IfThenElse>) {
          return same(x.cond, y.cond) && same(x.then_branch, y.then_branch) && same(x.else_branch, y.else_branch);
        } else if constexpr (std::is_same_v<T, ast::TryCatch>) {
          return same(x.body, y.body) && same(x.handler, y.handler);
        } else {
          static_assert(std::is_same_v<T, ast::Call>);
          if (x.name != y.name || x.args.size() != y.args.size()) return false;
          for (std::size_t i = 0; i < x.args.size(); ++i) {
            if (!same(x.args[i], y.args[i])) return false;
          }
          return true;
        }
      },
      a.node);
}

bool same_structure(const Program& a, const Program& b) {
  if (a.defs.size() != b.defs.size()) return false;
  for (std::size_t i = 0; i < a.defs.size(); ++i) {
    const auto& x = a.defs[i];
    const auto& y = b.defs[i];
    if (x.name != y.name || x.params != y.params || !same(x.body, y.body)) return false;
  }
  return same(a.main, b.main);
}

bool is_mir(const Filter& f) {
  return std::visit(
      [](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ast::NumLit> || std::is_same_v<T, ast::StrLit> ||
                      std::is_same_v<T, ast::Identity> || std::is_same_v<T, ast::Var> ||
                      std::is_same_v<T, ast::Break> || std::is_same_v<T, ast::CallArg>) {
          return true;
        } else if constexpr (std::is_same_v<T, ast::Paren> || std::is_same_v<T, ast::TryShorthand>) {
          return false;
        } else if constexpr (std::is_same_v<T, ast::ArrayCtor>) {
          return mir(x.inner);
        } else if constexpr (std::is_same_v<T, ast::ObjectCtor>) {
          return x.entries.empty() ||
                 (x.entries.size() == 1 && mir(x.entries[0].first) && mir(x.entries[0].second));
        } else if constexpr (std::is_same_v<T, ast::Path>) {
          if (!x.base || !x.base->template as<ast::Identity>() || x.parts.size() != 1) return false;
          const auto& p = x.parts[0];
          if (p.optional) return false;
          switch (p.kind) {
            case PathPart::Kind::All: return true;
            case PathPart::Kind::At: return is_var(p.lo);
            case PathPart::Kind::Range: return is_var(p.lo) && is_var(p.hi);
            default: return false;
          }
        } else if constexpr (std::is_same_v<T, ast::Binary>) {
          if (is_cartesian(x.op)) return is_var(x.lhs) && is_var(x.rhs);
          switch (x.op) {
            case BinOp::Pipe:
            case BinOp::Comma:
            case BinOp::Alt:
            case BinOp::Update:
              return mir(x.lhs) && mir(x.rhs);
            case BinOp::And:
            case BinOp::Or:
              return is_var(x.lhs) && mir(x.rhs);
            default:
              return false;
          }
        } else if constexpr (std::is_same_v<T, ast::BindAs>) {
          return mir(x.source) && mir(x.body);
        } else if constexpr (std::is_same_v<T, ast::Fold>) {
          return x.init && x.init->template as<ast::Identity>() && mir(x.source) && mir(x.body);
        } else if constexpr (std::is_same_v<T, ast::Label>) {
          return mir(x.body);
        } else if constexpr (std::is_same_v<T, ast::IfThenElse>) {
          return is_var(x.cond) && mir(x.then_branch) && mir(x.else_branch);
        } else if constexpr (std::is_same_v<T, ast::TryCatch>) {
          return mir(x.body) && mir(x.handler);
        } else {
          static_assert(std::is_same_v<T, ast::Call>);
          for (const auto& a : x.args) {
            if (!mir(a)) return false;
          }
          return true;
        }
      },
      f.node);
}

}  // namespace mjq
