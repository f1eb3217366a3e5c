#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace seqends::cli {

enum ExitCode : int { kOk = 0, kInternalError = 1, kPrecondition = 2 };

/// Runs one invocation. `args` excludes the program name. Reports go to
/// `out` (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seqends::cli
