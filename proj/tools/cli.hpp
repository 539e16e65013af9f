#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace usaphmp::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kDataError = 2,
  kGapExceeded = 3,
  kInvariantViolation = 4,
};

/// Runs the command line `args` (args[0] is the program name), writing
/// normal output to `out` and diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Stop flag polled by running solves; set from a SIGINT handler.
void request_stop() noexcept;

}  // namespace usaphmp::cli
