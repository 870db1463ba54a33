#pragma once

#include <iosfwd>

namespace gv::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kInputError = 2,
    kNotConverged = 3,
    kSolverFailure = 4,
};

/// Entry point for `gvortex <gen|solve|sweep|lambda-c|check> ...`.
/// Summaries go to `out`; diagnostics go to stderr at the verbosity given
/// by GV_LOG (error, info, debug).
int run(int argc, const char* const* argv, std::ostream& out);

} // namespace gv::cli
