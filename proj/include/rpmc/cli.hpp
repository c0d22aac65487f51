#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rpmc::cli {

enum ExitCode : int {
  kOk = 0,
  kThresholdFailed = 1,
  kUsageError = 2,
  kModelError = 3,
  kAutomatonLimit = 4,
};

/// Runs the command line `args` (without the program name) and returns the
/// process exit code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rpmc::cli
