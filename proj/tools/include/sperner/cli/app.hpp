#pragma once

#include <iosfwd>

namespace sperner::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 1,
  kExitUsage = 2,
  kExitBudget = 3,
};

// Runs `sperner <command> [flags]` in-process.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sperner::cli
