#pragma once

#include <iosfwd>

namespace qwheel::cli {

/// Exit codes of `run`.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

/// Runs the command line `argv` (argv[0] is the program name).  Results go to
/// `out` (or the --out file), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qwheel::cli
