#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pathpair::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailed = 1,  // infeasible, violated, verify failure, router phase failure
  kExitUsage = 2,   // bad arguments, malformed input, unmet preconditions
  kExitBudget = 3,  // oracle node budget or enumeration cap exhausted
};

// One CLI invocation. `args` excludes the program name. Results go to `out`
// (or the --out file), JSON-lines logs to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pathpair::cli
