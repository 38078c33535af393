#pragma once

#include <string>
#include <string_view>

#include "mjq/ast.hpp"

namespace mjq {

/// Concrete syntax for a filter. Parentheses are added where precedence
/// requires them, so parsing the output yields the same structure.
std::string print_filter(const Filter& f);
std::string print_definition(const Definition& d);
std::string print_program(const Program& p);

/// Renumbers fresh variables ("$x!7") in order of first appearance, so that
/// printed filters can be compared up to renaming of fresh variables.
std::string alpha_normalize(std::string_view text);

}  // namespace mjq
