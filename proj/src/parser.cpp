#include "mjq/parser.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <set>

#include "lexer.hpp"

namespace mjq {

using detail::Tok;
using detail::Token;

ParseError::ParseError(SourcePos pos, std::string message, std::vector<std::string> expected)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + message),
      pos_(pos),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

std::string ParseError::render(std::string_view source) const {
  std::string out = what();
  if (!expected_.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected_.size(); ++i) {
      if (i) out += i + 1 == expected_.size() ? " or " : ", ";
      out += expected_[i];
    }
    out += ")";
  }
  std::size_t start = 0;
  for (int l = 1; l < pos_.line && start != std::string_view::npos; ++l) {
    start = source.find('\n', start);
    if (start != std::string_view::npos) ++start;
  }
  if (start == std::string_view::npos || start > source.size()) return out;
  std::size_t end = source.find('\n', start);
  std::string_view line = source.substr(start, end == std::string_view::npos ? end : end - start);
  out += "\n  ";
  out += line;
  out += "\n  ";
  out += std::string(pos_.col > 1 ? pos_.col - 1 : 0, ' ');
  out += "^";
  return out;
}

bool is_keyword(std::string_view word) {
  static const std::set<std::string_view> kKeywords = {"def",    "if",      "then", "else",  "end",
                                                       "as",     "reduce",  "foreach", "try", "catch",
                                                       "label",  "and",     "or",   "break"};
  return kKeywords.count(word) > 0;
}

namespace {

struct OpInfo {
  BinOp op;
  int level;
};

// Levels, loosest first: 0 "|", 1 ",", 2 the update/alternative/junction
// group, 3 equality, 4 ordering, 5 additive, 6 multiplicative, 7 "%".
constexpr int kGroupLevel = 2;

bool right_assoc(int level) { return level == 0 || level == kGroupLevel; }

std::optional<OpInfo> binop_of(const Token& t, bool allow_comma) {
  if (t.kind == Tok::Pipe) return OpInfo{BinOp::Pipe, 0};
  if (t.kind == Tok::Comma) return allow_comma ? std::optional<OpInfo>(OpInfo{BinOp::Comma, 1}) : std::nullopt;
  if (t.kind == Tok::Ident) {
    if (t.value == "and") return OpInfo{BinOp::And, kGroupLevel};
    if (t.value == "or") return OpInfo{BinOp::Or, kGroupLevel};
    return std::nullopt;
  }
  if (t.kind != Tok::Op) return std::nullopt;
  static const std::pair<std::string_view, OpInfo> kTable[] = {
      {"=", {BinOp::Assign, 2}},     {"|=", {BinOp::Update, 2}},    {"+=", {BinOp::AddUpdate, 2}},
      {"-=", {BinOp::SubUpdate, 2}}, {"*=", {BinOp::MulUpdate, 2}}, {"/=", {BinOp::DivUpdate, 2}},
      {"%=", {BinOp::ModUpdate, 2}}, {"//=", {BinOp::AltUpdate, 2}}, {"//", {BinOp::Alt, 2}},
      {"==", {BinOp::Eq, 3}},        {"!=", {BinOp::Ne, 3}},        {"<", {BinOp::Lt, 4}},
      {"<=", {BinOp::Le, 4}},        {">", {BinOp::Gt, 4}},         {">=", {BinOp::Ge, 4}},
      {"+", {BinOp::Add, 5}},        {"-", {BinOp::Sub, 5}},        {"*", {BinOp::Mul, 6}},
      {"/", {BinOp::Div, 6}},        {"%", {BinOp::Mod, 7}},
  };
  for (const auto& [s, info] : kTable) {
    if (t.text == s) return info;
  }
  return std::nullopt;
}

Number parse_number(std::string_view text) {
  bool integral = text.find_first_of(".eE") == std::string_view::npos;
  if (integral) {
    std::int64_t i = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), i);
    if (ec == std::errc() && ptr == text.data() + text.size()) return Number(i);
  }
  // strtod handles overflow to infinity, which from_chars reports as an error.
  std::string s(text);
  return Number(std::strtod(s.c_str(), nullptr));
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(detail::lex(text)) {}

  Program program() {
    Program p;
    while (at_keyword("def")) p.defs.push_back(definition());
    p.main = pipe(true);
    expect_end();
    return p;
  }

  std::vector<Definition> definitions() {
    std::vector<Definition> defs;
    while (at_keyword("def")) defs.push_back(definition());
    expect_end();
    return defs;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  const Token& ahead(std::size_t k = 1) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  Token take() {
    Token t = toks_[i_];
    if (i_ + 1 < toks_.size()) ++i_;
    return t;
  }

  bool at(Tok k) const { return cur().kind == k; }
  bool at_keyword(std::string_view w) const { return cur().kind == Tok::Ident && cur().value == w; }

  [[noreturn]] void unexpected(std::vector<std::string> expected) {
    throw ParseError(cur().pos, "unexpected " + detail::describe(cur()), std::move(expected));
  }

  Token expect(Tok k, std::string_view spelled) {
    if (!at(k)) unexpected({std::string(spelled)});
    return take();
  }

  void expect_keyword(std::string_view w) {
    if (!at_keyword(w)) unexpected({"'" + std::string(w) + "'"});
    take();
  }

  void expect_end() {
    if (!at(Tok::Eof)) unexpected({"end of input"});
  }

  std::string name_token(std::string_view what) {
    if (!at(Tok::Ident) || is_keyword(cur().value)) unexpected({std::string(what)});
    return take().value;
  }

  std::string var_token() {
    if (!at(Tok::Var)) unexpected({"variable"});
    return take().value;
  }

  Definition definition() {
    Definition d;
    d.pos = cur().pos;
    expect_keyword("def");
    d.name = name_token("definition name");
    if (at(Tok::LParen)) {
      take();
      for (;;) {
        if (at(Tok::Var)) throw ParseError(cur().pos, "variable parameters are not supported");
        std::string param = name_token("parameter name");
        if (std::find(d.params.begin(), d.params.end(), param) != d.params.end()) {
          throw ParseError(toks_[i_ - 1].pos, "duplicate parameter '" + param + "'");
        }
        d.params.push_back(param);
        if (at(Tok::Semi)) {
          take();
          continue;
        }
        expect(Tok::RParen, "';' or ')'");
        break;
      }
    }
    expect(Tok::Colon, "':'");
    params_ = &d.params;
    d.body = pipe(true);
    params_ = nullptr;
    expect(Tok::Semi, "';'");
    return d;
  }

  FilterPtr pipe(bool allow_comma) { return binary(0, allow_comma); }

  FilterPtr binary(int min_level, bool allow_comma) {
    if (at_keyword("def")) throw ParseError(cur().pos, "definitions are only supported at the top level");
    FilterPtr lhs = operand(allow_comma);
    for (;;) {
      auto info = binop_of(cur(), allow_comma);
      if (!info || info->level < min_level) return lhs;
      SourcePos pos = cur().pos;
      take();
      int next = right_assoc(info->level) ? info->level : info->level + 1;
      FilterPtr rhs = binary(next, allow_comma);
      lhs = make_filter(ast::Binary{info->op, std::move(lhs), std::move(rhs)}, pos);
    }
  }

  // An operand of a binary operator. "label" and "as" extend as far to the
  // right as possible, like in jq.
  FilterPtr operand(bool allow_comma) {
    SourcePos pos = cur().pos;
    if (at_keyword("label")) {
      take();
      std::string name = var_token();
      expect(Tok::Pipe, "'|'");
      return make_filter(ast::Label{std::move(name), pipe(allow_comma)}, pos);
    }
    FilterPtr t = postfix();
    if (at_keyword("as")) {
      take();
      if (at(Tok::LBracket) || at(Tok::LBrace)) throw ParseError(cur().pos, "destructuring patterns are not supported");
      std::string name = var_token();
      expect(Tok::Pipe, "'|'");
      return make_filter(ast::BindAs{std::move(t), std::move(name), pipe(allow_comma)}, pos);
    }
    return t;
  }

  FilterPtr postfix() {
    // ".a" is the identity followed by a field part.
    FilterPtr t = at(Tok::Field) ? make_filter(ast::Identity{}, cur().pos) : term();
    std::vector<PathPart> parts;
    SourcePos pos = t->pos;
    auto flush = [&] {
      if (parts.empty()) return;
      t = make_filter(ast::Path{std::move(t), std::move(parts)}, pos);
      parts.clear();
    };
    for (;;) {
      if (at(Tok::LBracket)) {
        parts.push_back(path_part());
      } else if (at(Tok::Field)) {
        SourcePos fp = cur().pos;
        parts.push_back(field_part(take().value, fp));
      } else if (at(Tok::Dot) && (ahead().kind == Tok::LBracket || ahead().kind == Tok::Str)) {
        take();
        if (at(Tok::Str)) {
          SourcePos fp = cur().pos;
          parts.push_back(field_part(take().value, fp));
        } else {
          parts.push_back(path_part());
        }
      } else if (at(Tok::Question)) {
        take();
        if (!parts.empty() && !parts.back().optional) {
          parts.back().optional = true;
        } else {
          flush();
          t = make_filter(ast::TryShorthand{std::move(t)}, pos);
        }
      } else {
        break;
      }
    }
    flush();
    return t;
  }

  PathPart field_part(std::string name, SourcePos pos) {
    PathPart p;
    p.kind = PathPart::Kind::At;
    p.lo = make_filter(ast::StrLit{std::move(name)}, pos);
    return p;
  }

  PathPart path_part() {
    expect(Tok::LBracket, "'['");
    PathPart p;
    if (at(Tok::RBracket)) {
      take();
      p.kind = PathPart::Kind::All;
      return p;
    }
    if (at(Tok::Colon)) {
      take();
      p.kind = PathPart::Kind::Until;
      p.hi = pipe(true);
      expect(Tok::RBracket, "']'");
      return p;
    }
    p.lo = pipe(true);
    if (at(Tok::Colon)) {
      take();
      if (at(Tok::RBracket)) {
        p.kind = PathPart::Kind::From;
      } else {
        p.kind = PathPart::Kind::Range;
        p.hi = pipe(true);
      }
    } else {
      p.kind = PathPart::Kind::At;
    }
    expect(Tok::RBracket, "']'");
    return p;
  }

  FilterPtr term() {
    SourcePos pos = cur().pos;
    switch (cur().kind) {
      case Tok::Num:
        return make_filter(ast::NumLit{parse_number(take().text)}, pos);
      case Tok::Str:
        return make_filter(ast::StrLit{take().value}, pos);
      case Tok::Dot:
        take();
        return make_filter(ast::Identity{}, pos);
      case Tok::Var:
        return make_filter(ast::Var{take().value}, pos);
      case Tok::LParen: {
        take();
        FilterPtr inner = pipe(true);
        expect(Tok::RParen, "')'");
        return make_filter(ast::Paren{std::move(inner)}, pos);
      }
      case Tok::LBracket: {
        take();
        if (at(Tok::RBracket)) {
          take();
          return make_filter(ast::ArrayCtor{nullptr}, pos);
        }
        FilterPtr inner = pipe(true);
        expect(Tok::RBracket, "']'");
        return make_filter(ast::ArrayCtor{std::move(inner)}, pos);
      }
      case Tok::LBrace:
        return object();
      case Tok::Op:
        if (cur().text == "-" && ahead().kind == Tok::Num) {
          take();
          std::string text = "-" + take().text;
          return make_filter(ast::NumLit{parse_number(text)}, pos);
        }
        break;
      case Tok::Ident:
        return keyword_or_call();
      default:
        break;
    }
    unexpected({"filter"});
  }

  FilterPtr keyword_or_call() {
    SourcePos pos = cur().pos;
    const std::string& w = cur().value;
    if (w == "if") return if_then_else();
    if (w == "try") {
      take();
      FilterPtr body = postfix();
      if (at_keyword("catch")) {
        take();
        FilterPtr handler = postfix();
        return make_filter(ast::TryCatch{std::move(body), std::move(handler)}, pos);
      }
      return make_filter(ast::TryShorthand{std::move(body)}, pos);
    }
    if (w == "reduce" || w == "foreach") return fold();
    if (w == "break") {
      take();
      return make_filter(ast::Break{var_token()}, pos);
    }
    if (is_keyword(w)) unexpected({"filter"});
    std::string name = take().value;
    std::vector<FilterPtr> args;
    if (at(Tok::LParen)) {
      take();
      if (at(Tok::RParen)) {
        take();
      } else {
        for (;;) {
          args.push_back(pipe(true));
          if (at(Tok::Semi)) {
            take();
            continue;
          }
          expect(Tok::RParen, "';' or ')'");
          break;
        }
      }
    }
    if (params_ && std::find(params_->begin(), params_->end(), name) != params_->end()) {
      if (!args.empty()) throw ParseError(pos, "parameter '" + name + "' takes no arguments");
      return make_filter(ast::CallArg{std::move(name)}, pos);
    }
    return make_filter(ast::Call{std::move(name), std::move(args), {}}, pos);
  }

  FilterPtr if_then_else() {
    SourcePos pos = cur().pos;
    expect_keyword("if");
    FilterPtr cond = pipe(true);
    expect_keyword("then");
    FilterPtr then_branch = pipe(true);
    if (at_keyword("elif")) throw ParseError(cur().pos, "'elif' is not supported");
    if (!at_keyword("else")) {
      if (at_keyword("end")) throw ParseError(cur().pos, "'if' without 'else' is not supported", {"'else'"});
      unexpected({"'else'"});
    }
    take();
    FilterPtr else_branch = pipe(true);
    expect_keyword("end");
    return make_filter(ast::IfThenElse{std::move(cond), std::move(then_branch), std::move(else_branch)}, pos);
  }

  FilterPtr fold() {
    SourcePos pos = cur().pos;
    FoldKind kind = take().value == "reduce" ? FoldKind::Reduce : FoldKind::Foreach;
    FilterPtr source = postfix();
    expect_keyword("as");
    std::string var = var_token();
    expect(Tok::LParen, "'('");
    FilterPtr init = pipe(true);
    expect(Tok::Semi, "';'");
    FilterPtr body = pipe(true);
    if (kind == FoldKind::Foreach && at(Tok::Semi)) {
      throw ParseError(cur().pos, "foreach with an extraction filter is not supported");
    }
    expect(Tok::RParen, "')'");
    return make_filter(ast::Fold{kind, std::move(source), std::move(var), std::move(init), std::move(body)}, pos);
  }

  FilterPtr object() {
    SourcePos pos = cur().pos;
    expect(Tok::LBrace, "'{'");
    ast::ObjectCtor obj;
    if (at(Tok::RBrace)) {
      take();
      return make_filter(std::move(obj), pos);
    }
    for (;;) {
      SourcePos kp = cur().pos;
      FilterPtr key;
      if (at(Tok::Ident)) {
        key = make_filter(ast::StrLit{take().value}, kp);
      } else if (at(Tok::Str)) {
        key = make_filter(ast::StrLit{take().value}, kp);
      } else if (at(Tok::LParen)) {
        take();
        FilterPtr inner = pipe(true);
        expect(Tok::RParen, "')'");
        key = make_filter(ast::Paren{std::move(inner)}, kp);
      } else {
        unexpected({"object key"});
      }
      if (!at(Tok::Colon)) {
        throw ParseError(cur().pos, "object entries need a value", {"':'"});
      }
      take();
      FilterPtr value = pipe(false);
      obj.entries.emplace_back(std::move(key), std::move(value));
      if (at(Tok::Comma)) {
        take();
        continue;
      }
      expect(Tok::RBrace, "',' or '}'");
      break;
    }
    return make_filter(std::move(obj), pos);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  const std::vector<std::string>* params_ = nullptr;
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).program(); }

std::vector<Definition> parse_definitions(std::string_view text) { return Parser(text).definitions(); }

}  // namespace mjq
