#pragma once

#include <iosfwd>

namespace logopt {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitNumeric = 2, kExitVerify = 3 };

/// Subcommands solve, march, surface, series, improve, optimize, verify.
/// Results go to `out` (or --out), errors to `err` as one JSON line.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace logopt
