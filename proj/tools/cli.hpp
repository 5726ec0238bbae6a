#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hierprobe::cli {

/// Process exit codes; stable across releases.
enum ExitCode : int {
  kOk = 0,
  kDataError = 2,
  kInfeasible = 3,
  kMissingKey = 4,
  kUsage = 64,
};

/// Runs the hierprobe command line. `args` excludes the program name.
/// Results go to `out`; logs and diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hierprobe::cli
