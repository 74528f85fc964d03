#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ordeq {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitYes = 0,
  kExitNonDefinitive = 2,
  kExitNo = 3,
  kExitUsage = 64,
  kExitBadInput = 65,
  kExitInternal = 70,
};

/// Runs one command. `args` excludes the program name. JSON goes to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ordeq
