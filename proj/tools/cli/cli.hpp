#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pursuit::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kValidationError = 2,
  kSolverFailure = 3,
};

struct Environment {
  // Value of PURSUIT_SEED, the master-seed default of last resort.
  std::optional<std::string> seed;
};

/// Runs one invocation: args[0] is the subcommand (recover, bench, sweep,
/// ric). Results go to --out when given, else to `out`; diagnostics go to
/// `err` as a single line. Nothing is written on validation failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env = {});

}  // namespace pursuit::cli
