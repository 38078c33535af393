#include "lexer.hpp"

#include <array>
#include <cctype>

#include "mjq/parser.hpp"

namespace mjq::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : src_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.pos = pos();
      if (i_ >= src_.size()) {
        out.push_back(std::move(t));
        return out;
      }
      lex_one(t);
      out.push_back(std::move(t));
    }
  }

 private:
  SourcePos pos() const { return {line_, col_}; }

  char peek(std::size_t k = 0) const { return i_ + k < src_.size() ? src_[i_ + k] : '\0'; }

  void advance() {
    char c = src_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col_;
    }
  }

  [[noreturn]] void fail(SourcePos at, std::string message) { throw ParseError(at, std::move(message)); }

  void skip_space() {
    while (i_ < src_.size()) {
      char c = peek();
      if (c == '#') {
        while (i_ < src_.size() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else {
        break;
      }
    }
  }

  std::string take_ident() {
    std::string s;
    while (i_ < src_.size() && ident_char(peek())) {
      s += peek();
      advance();
    }
    return s;
  }

  void lex_one(Token& t) {
    char c = peek();
    std::size_t start = i_;
    if (digit(c)) {
      lex_number(t);
    } else if (c == '"') {
      lex_string(t);
    } else if (ident_start(c)) {
      t.kind = Tok::Ident;
      t.value = take_ident();
    } else if (c == '$') {
      advance();
      if (!ident_start(peek())) fail(t.pos, "expected a variable name after '$'");
      t.kind = Tok::Var;
      t.value = take_ident();
    } else if (c == '.') {
      advance();
      if (ident_start(peek())) {
        t.kind = Tok::Field;
        t.value = take_ident();
      } else {
        t.kind = Tok::Dot;
      }
    } else {
      lex_punct(t);
    }
    t.text = std::string(src_.substr(start, i_ - start));
  }

  void lex_number(Token& t) {
    t.kind = Tok::Num;
    while (digit(peek())) advance();
    if (peek() == '.' && digit(peek(1))) {
      advance();
      while (digit(peek())) advance();
    }
    if (peek() == 'e' || peek() == 'E') {
      std::size_t k = 1;
      if (peek(1) == '+' || peek(1) == '-') k = 2;
      if (!digit(peek(k))) fail(pos(), "malformed number exponent");
      for (std::size_t j = 0; j < k; ++j) advance();
      while (digit(peek())) advance();
    }
    if (ident_start(peek())) fail(pos(), "unexpected character after number");
  }

  unsigned hex4(SourcePos at) {
    unsigned v = 0;
    for (int k = 0; k < 4; ++k) {
      char h = peek();
      unsigned d;
      if (h >= '0' && h <= '9') d = h - '0';
      else if (h >= 'a' && h <= 'f') d = h - 'a' + 10;
      else if (h >= 'A' && h <= 'F') d = h - 'A' + 10;
      else fail(at, "invalid \\u escape");
      v = v * 16 + d;
      advance();
    }
    return v;
  }

  void lex_string(Token& t) {
    t.kind = Tok::Str;
    advance();
    for (;;) {
      if (i_ >= src_.size()) fail(t.pos, "unterminated string literal");
      char c = peek();
      if (c == '"') {
        advance();
        return;
      }
      if (static_cast<unsigned char>(c) < 0x20) fail(pos(), "control character in string literal");
      if (c != '\\') {
        t.value += c;
        advance();
        continue;
      }
      SourcePos at = pos();
      advance();
      char e = peek();
      if (i_ >= src_.size()) fail(t.pos, "unterminated string literal");
      advance();
      switch (e) {
        case '"': t.value += '"'; break;
        case '\\': t.value += '\\'; break;
        case '/': t.value += '/'; break;
        case 'b': t.value += '\b'; break;
        case 'f': t.value += '\f'; break;
        case 'n': t.value += '\n'; break;
        case 'r': t.value += '\r'; break;
        case 't': t.value += '\t'; break;
        case 'u': {
          char32_t cp = hex4(at);
          if (cp >= 0xD800 && cp < 0xDC00) {
            if (peek() != '\\' || peek(1) != 'u') fail(at, "unpaired surrogate in \\u escape");
            advance();
            advance();
            char32_t lo = hex4(at);
            if (lo < 0xDC00 || lo >= 0xE000) fail(at, "unpaired surrogate in \\u escape");
            cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
          } else if (cp >= 0xDC00 && cp < 0xE000) {
            fail(at, "unpaired surrogate in \\u escape");
          }
          append_utf8(t.value, cp);
          break;
        }
        case '(': fail(at, "string interpolation is not supported");
        default: fail(at, std::string("invalid escape '\\") + e + "'");
      }
    }
  }

  void lex_punct(Token& t) {
    static constexpr std::array<std::string_view, 20> kOps = {
        "//=", "|=", "//", "==", "!=", "<=", ">=", "+=", "-=", "*=",
        "/=",  "%=", "=",  "<",  ">",  "+",  "-",  "*",  "/",  "%"};
    std::string_view rest = src_.substr(i_);
    for (auto op : kOps) {
      if (rest.substr(0, op.size()) == op) {
        for (std::size_t k = 0; k < op.size(); ++k) advance();
        t.kind = Tok::Op;
        return;
      }
    }
    char c = peek();
    switch (c) {
      case '[': t.kind = Tok::LBracket; break;
      case ']': t.kind = Tok::RBracket; break;
      case '{': t.kind = Tok::LBrace; break;
      case '}': t.kind = Tok::RBrace; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      case '|': t.kind = Tok::Pipe; break;
      case ',': t.kind = Tok::Comma; break;
      case ':': t.kind = Tok::Colon; break;
      case ';': t.kind = Tok::Semi; break;
      case '?': t.kind = Tok::Question; break;
      default: {
        std::string shown = static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7F
                                ? "byte " + std::to_string(static_cast<unsigned char>(c))
                                : std::string("'") + c + "'";
        fail(pos(), "unexpected character " + shown);
      }
    }
    advance();
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> lex(std::string_view text) { return Lexer(text).run(); }

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Eof: return "end of input";
    case Tok::Str: return "string literal";
    case Tok::Ident: return is_keyword(t.value) ? "keyword '" + t.value + "'" : "identifier '" + t.value + "'";
    default: return "'" + t.text + "'";
  }
}

}  // namespace mjq::detail
