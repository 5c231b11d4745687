#pragma once

// The zakgross batch front-end. The executable is a thin wrapper around
// run(), which tests drive in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace zakgross::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_failure = 1,
  exit_config = 2,
  exit_non_convergent = 3,
  exit_singular = 4,
};

/// args excludes the program name. Reports go to out; failures print one
/// line of JSON {"error": kind, "message": text} to err. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zakgross::cli
