#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace invariant::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidData = 1,
  kExitMissingOrCorrupt = 2,
  kExitUsage = 64,
};

/// Runs one command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace invariant::cli
