#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsearch::cli {

enum ExitCode : int { kSuccess = 0, kRuntimeFailure = 1, kUsage = 2 };

/// Runs one invocation. `args` excludes the program name. Results go to `out`
/// (unless --out names a file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsearch::cli
