#include "mjq/printer.hpp"

#include <cmath>
#include <map>
#include <regex>

#include "mjq/json.hpp"

namespace mjq {

namespace {

constexpr int kTermLevel = 8;

int level_of(BinOp op) {
  switch (op) {
    case BinOp::Pipe: return 0;
    case BinOp::Comma: return 1;
    case BinOp::Eq:
    case BinOp::Ne: return 3;
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge: return 4;
    case BinOp::Add:
    case BinOp::Sub: return 5;
    case BinOp::Mul:
    case BinOp::Div: return 6;
    case BinOp::Mod: return 7;
    default: return 2;
  }
}

bool right_assoc(int level) { return level == 0 || level == 2; }

std::string number_literal(const Number& n) {
  if (n.is_dec() && std::isinf(n.as_dec())) return n.as_dec() > 0 ? "1e1000" : "-1e1000";
  return format_number(n);
}

class Printer {
 public:
  // `tail_ok`: nothing follows in the enclosing construct, so a filter that
  // extends to the right ("as", "label") needs no parentheses.
  std::string print(const Filter& f, int min_level, bool no_comma, bool tail_ok) {
    if (auto b = f.as<ast::Binary>()) {
      int level = level_of(b->op);
      if (level < min_level || (b->op == BinOp::Comma && no_comma)) return "(" + top(f) + ")";
      bool right = right_assoc(level);
      std::string l = print(*b->lhs, right ? level + 1 : level, no_comma, false);
      std::string r = print(*b->rhs, right ? level : level + 1, no_comma, tail_ok);
      if (b->op == BinOp::Comma) return l + ", " + r;
      return l + " " + std::string(spelling(b->op)) + " " + r;
    }
    if (auto x = f.as<ast::BindAs>()) {
      if (!tail_ok) return "(" + top(f) + ")";
      return postfix_operand(*x->source) + " as $" + x->var + " | " + print(*x->body, 0, no_comma, true);
    }
    if (auto x = f.as<ast::Label>()) {
      if (!tail_ok) return "(" + top(f) + ")";
      return "label $" + x->name + " | " + print(*x->body, 0, no_comma, true);
    }
    return term(f);
  }

  std::string top(const Filter& f) { return print(f, 0, false, true); }

 private:
  std::string postfix_operand(const Filter& f) { return print(f, kTermLevel, false, false); }

  // Operand of a path suffix or of "?".
  std::string suffix_base(const Filter& f) {
    if (f.as<ast::Path>() || f.as<ast::TryCatch>()) return "(" + top(f) + ")";
    return postfix_operand(f);
  }

  std::string part(const PathPart& p) {
    std::string s;
    switch (p.kind) {
      case PathPart::Kind::All: s = "[]"; break;
      case PathPart::Kind::At: s = "[" + top(*p.lo) + "]"; break;
      case PathPart::Kind::From: s = "[" + top(*p.lo) + ":]"; break;
      case PathPart::Kind::Until: s = "[:" + top(*p.hi) + "]"; break;
      case PathPart::Kind::Range: s = "[" + top(*p.lo) + ":" + top(*p.hi) + "]"; break;
    }
    if (p.optional) s += "?";
    return s;
  }

  std::string string_literal(const std::string& s) {
    std::string out;
    write_string(out, s);
    return out;
  }

  std::string term(const Filter& f) {
    return std::visit(
        [&](const auto& x) -> std::string {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, ast::NumLit>) {
            return number_literal(x.value);
          } else if constexpr (std::is_same_v<T, ast::StrLit>) {
            return string_literal(x.value);
          } else if constexpr (std::is_same_v<T, ast::Identity>) {
            return ".";
          } else if constexpr (std::is_same_v<T, ast::Paren>) {
            return "(" + top(*x.inner) + ")";
          } else if constexpr (std::is_same_v<T, ast::TryShorthand>) {
            const auto* path = x.inner->template as<ast::Path>();
            if (path && !path->parts.empty() && !path->parts.back().optional) return "(" + top(*x.inner) + ")?";
            return suffix_base_or_path(*x.inner) + "?";
          } else if constexpr (std::is_same_v<T, ast::ArrayCtor>) {
            return x.inner ? "[" + top(*x.inner) + "]" : "[]";
          } else if constexpr (std::is_same_v<T, ast::ObjectCtor>) {
            if (x.entries.empty()) return "{}";
            std::string s = "{";
            for (std::size_t i = 0; i < x.entries.size(); ++i) {
              if (i) s += ", ";
              const Filter& k = *x.entries[i].first;
              if (auto str = k.template as<ast::StrLit>()) s += string_literal(str->value);
              else if (k.template as<ast::Paren>()) s += term(k);
              else s += "(" + top(k) + ")";
              s += ": " + print(*x.entries[i].second, 0, true, true);
            }
            return s + "}";
          } else if constexpr (std::is_same_v<T, ast::Path>) {
            std::string s = x.base->template as<ast::Identity>() ? "." : suffix_base(*x.base);
            for (const auto& p : x.parts) s += part(p);
            return s;
          } else if constexpr (std::is_same_v<T, ast::Fold>) {
            std::string kw = x.kind == FoldKind::Reduce ? "reduce" : x.kind == FoldKind::Foreach ? "foreach" : "for";
            return kw + " " + postfix_operand(*x.source) + " as $" + x.var + " (" + top(*x.init) + "; " +
                   top(*x.body) + ")";
          } else if constexpr (std::is_same_v<T, ast::Var>) {
            return "$" + x.name;
          } else if constexpr (std::is_same_v<T, ast::Break>) {
            return "break $" + x.name;
          } else if constexpr (std::is_same_v<T, ast::IfThenElse>) {
            return "if " + top(*x.cond) + " then " + top(*x.then_branch) + " else " + top(*x.else_branch) + " end";
          } else if constexpr (std::is_same_v<T, ast::TryCatch>) {
            return "try " + postfix_operand(*x.body) + " catch " + postfix_operand(*x.handler);
          } else if constexpr (std::is_same_v<T, ast::CallArg>) {
            return x.name;
          } else if constexpr (std::is_same_v<T, ast::Call>) {
            if (x.args.empty()) return x.name;
            std::string s = x.name + "(";
            for (std::size_t i = 0; i < x.args.size(); ++i) {
              if (i) s += "; ";
              s += top(*x.args[i]);
            }
            return s + ")";
          } else {
            // Binary, BindAs and Label are handled in print().
            return "(" + top(f) + ")";
          }
        },
        f.node);
  }

  std::string suffix_base_or_path(const Filter& f) {
    if (f.as<ast::TryCatch>()) return "(" + top(f) + ")";
    return postfix_operand(f);
  }
};

}  // namespace

std::string print_filter(const Filter& f) { return Printer().top(f); }

std::string print_definition(const Definition& d) {
  std::string s = "def " + d.name;
  if (!d.params.empty()) {
    s += "(";
    for (std::size_t i = 0; i < d.params.size(); ++i) {
      if (i) s += "; ";
      s += d.params[i];
    }
    s += ")";
  }
  return s + ": " + print_filter(*d.body) + ";";
}

std::string print_program(const Program& p) {
  std::string s;
  for (const auto& d : p.defs) s += print_definition(d) + " ";
  return s + print_filter(*p.main);
}

std::string alpha_normalize(std::string_view text) {
  static const std::regex kFresh(R"(\$([A-Za-z_][A-Za-z0-9_]*)!([0-9]+))");
  std::string in(text);
  std::string out;
  std::map<std::string, int> renamed;
  auto it = std::sregex_iterator(in.begin(), in.end(), kFresh);
  std::size_t last = 0;
  for (; it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    out.append(in, last, m.position() - last);
    auto [entry, inserted] = renamed.emplace(m.str(), static_cast<int>(renamed.size()));
    (void)inserted;
    out += "$" + m[1].str() + "!" + std::to_string(entry->second);
    last = m.position() + m.length();
  }
  out.append(in, last, std::string::npos);
  return out;
}

}  // namespace mjq
