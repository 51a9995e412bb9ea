#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cevian::cli {

/// Process exit codes.
enum ExitCode : int {
  kPass = 0,
  kViolation = 1,
  kUsage = 2,
  kDomain = 3,
  kConvergence = 4,
};

/// Runs the command line `args` (program name excluded), writing the report
/// to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cevian::cli
