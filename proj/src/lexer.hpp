#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mjq/ast.hpp"

namespace mjq::detail {

enum class Tok {
  Eof,
  Num,
  Str,
  Ident,
  Field,  // .name
  Var,    // $name
  Dot,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Pipe,
  Comma,
  Colon,
  Semi,
  Question,
  Op,  // any binary operator other than "|" and ","
};

struct Token {
  Tok kind = Tok::Eof;
  std::string text;   // raw spelling; for Op the operator
  std::string value;  // decoded string literal, or the name of Ident/Field/Var
  SourcePos pos;
};

/// Splits program text into tokens. Throws ParseError.
std::vector<Token> lex(std::string_view text);

std::string describe(const Token& t);

}  // namespace mjq::detail
