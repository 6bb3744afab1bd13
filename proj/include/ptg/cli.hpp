#pragma once

#include <ostream>

namespace ptg {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,       // parse or validation failure
  kExitResetCycle = 3,  // region game has a reset on a cycle
  kExitBudget = 4,      // internal budget exceeded or other internal failure
  kExitVerify = 5,      // a verification or simulation check failed
};

// Runs `ptg <command> ...`. The run report (JSON) goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ptg
