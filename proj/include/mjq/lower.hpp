#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mjq/ast.hpp"

namespace mjq {

struct BindingError {
  SourcePos pos;
  std::string message;
};

/// A filter name with its arity, e.g. {"select", 1}.
using Signature = std::pair<std::string, int>;

/// Checks that every argument, label and variable is bound and that every
/// call names a definition (earlier in the program, itself, or one of
/// `predefined`). Returns one error per violation.
std::vector<BindingError> check_wellformed(const Program& p, const std::vector<Signature>& predefined = {});

/// HIR to MIR lowering. Fresh variables are spelled "hint!N", which the lexer
/// never produces, so they cannot collide with source variables.
class Lowerer {
 public:
  std::string fresh_var(std::string_view hint);

  FilterPtr lower(const FilterPtr& f);
  /// The MIR fragment for one path part applied to the current input, where
  /// `anchor` holds the input of the whole path.
  FilterPtr lower_path_part(const PathPart& p, bool optional, const std::string& anchor);
  Definition lower(const Definition& d);
  Program lower(const Program& p);

 private:
  FilterPtr lower_node(const FilterPtr& f);
  FilterPtr maybe_try(FilterPtr f, bool optional, SourcePos pos);

  int next_ = 0;
};

FilterPtr lower_filter(const FilterPtr& f);
Program lower_program(const Program& p);

}  // namespace mjq
