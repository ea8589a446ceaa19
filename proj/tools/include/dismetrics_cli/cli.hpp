#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dismetrics::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kSolverError = 3,
};

// Runs `dismetrics <args...>` (args excludes the program name). Normal
// output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dismetrics::cli
