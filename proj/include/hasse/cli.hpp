#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hasse {

/// Exit statuses of the command-line front end.
enum ExitStatus : int { kExitOk = 0, kExitMath = 1, kExitInput = 2 };

/// Runs one `hs` invocation; `args` excludes the program name. Results go
/// to `out`, diagnostics to `err`. With --json every outcome, including
/// failures, is a JSON document on `out` whose "code" field names it.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hasse
