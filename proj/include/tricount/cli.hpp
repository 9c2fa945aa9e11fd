#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace tricount {

/// Exit codes of the command-line harness.
enum ExitCode : int {
  kExitOk = 0,
  kExitRuntime = 1,
  kExitUsage = 2,  // bad flags, missing or invalid input, infeasible parameters
};

/// Runs one command. `args` excludes the program name, e.g. {"oracle", "s.el", "--k", "4"}.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace tricount
