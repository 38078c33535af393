#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mjq/eval.hpp"
#include "mjq/lower.hpp"

namespace mjq {

/// Raised when a program does not parse or is not well-formed. Each
/// diagnostic is one rendered message.
class CompileError : public std::runtime_error {
 public:
  explicit CompileError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

/// Source text of the builtin definitions.
std::string_view prelude_source();
/// The builtin definitions, parsed.
const std::vector<Definition>& prelude();
/// Signatures callable from user programs: prelude definitions and natives.
std::vector<Signature> builtin_signatures();

/// Parses, checks, lowers and links a program against the prelude.
std::shared_ptr<const CompiledProgram> compile(std::string_view text);

/// Sets the call targets of every call in `p`.
void resolve_calls(CompiledProgram& p);

/// Outputs of the main filter for one input value.
Stream run_program(const std::shared_ptr<const CompiledProgram>& p, const Value& input);

/// Convenience for tests and examples: compile and run, collecting results.
std::vector<ValueResult> run_text(std::string_view program, const Value& input);

}  // namespace mjq
