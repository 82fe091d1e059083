#pragma once

#include <string>
#include <vector>

namespace addcomb::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kNegative = 2, kBudget = 3 };

struct RunResult {
  int exit_code = kOk;
  /// The JSON report (or help text when --help was given).
  std::string output;
};

/// Parses args (without the program name), runs the subcommand, and writes the
/// report to --out when given.
RunResult run(const std::vector<std::string>& args);

}  // namespace addcomb::cli
