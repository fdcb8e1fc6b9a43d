#pragma once

#include <string>
#include <vector>

namespace psiherm {

/// In-process CLI driver: parses argv-style arguments (without the program
/// name), runs the requested command, and returns the exit code with captured
/// stdout and stderr.  Exit codes: 0 success, 1 verification failure, 2 input
/// or usage error.
struct CliOutcome {
  int exit_code = 0;
  std::string out;
  std::string err;
};

CliOutcome run_cli(const std::vector<std::string>& args);

}  // namespace psiherm
