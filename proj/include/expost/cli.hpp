#pragma once

#include <iosfwd>

namespace expost {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 2,
  kExitInvariant = 3,
  kExitNotBinary = 4,
  kExitBudget = 5,
};

/// Runs one command (solve, analyze-binary, classify, greedy, compare) and
/// returns its exit code. All output goes to `out` and `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace expost
