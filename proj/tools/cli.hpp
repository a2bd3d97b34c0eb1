#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blockcomp::cli {

enum ExitCode { kOk = 0, kInvariantFailure = 1, kInputError = 2 };

/// Runs one blockcomp invocation. args excludes the program name. Reports go
/// to out (or the --out file), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blockcomp::cli
