#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mjq {

/// Exit codes of the command line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitCompile = 3,
  kExitBadJson = 4,
  kExitRuntime = 5,
};

struct RunConfig {
  bool null_input = false;
  /// Inline program. Mutually exclusive with program_file.
  std::string program_text;
  std::optional<std::string> program_file;
  /// Input files, read in order. Empty means standard input.
  std::vector<std::string> input_paths;
};

/// Runs a program over every input value, writing one compact JSON value
/// per line to `out` and diagnostics to `err`. Returns an ExitCode.
int run(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err);

/// Runs `f` on a thread with a large stack and a matching evaluation depth
/// bound, and waits for it. Exceptions thrown by `f` are rethrown here.
void run_with_large_stack(const std::function<void()>& f);

}  // namespace mjq
