#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qmc::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kFalse = 1, kError = 2 };

/// Runs one `qmc` command line (args excludes the program name). Reports go to
/// `out`, diagnostics and warnings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmc::cli
