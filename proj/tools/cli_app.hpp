#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subsetdfa::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kFormat = 2,
  kBudget = 3,
};

/// Runs one command line (args exclude the program name). Normal output goes
/// to `out`, diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subsetdfa::cli
