#pragma once

#include <iosfwd>

namespace normsum::cli {

/// Runs one CLI invocation. Reports go to out, diagnostics to err.
/// Exit code 0 on success with empty counterexample sets, 1 on verification
/// failure, 2 on usage or parameter errors.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace normsum::cli
