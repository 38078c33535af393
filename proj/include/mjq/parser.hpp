#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mjq/ast.hpp"

namespace mjq {

class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, std::string message, std::vector<std::string> expected = {});

  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

  /// "line:col: message" followed by the offending source line and a caret.
  std::string render(std::string_view source) const;

 private:
  SourcePos pos_;
  std::string message_;
  std::vector<std::string> expected_;
};

/// Parses a sequence of definitions followed by a main filter.
Program parse_program(std::string_view text);

/// Parses definitions only, for the prelude. Trailing input is an error.
std::vector<Definition> parse_definitions(std::string_view text);

bool is_keyword(std::string_view word);

}  // namespace mjq
