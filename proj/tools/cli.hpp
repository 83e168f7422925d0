#pragma once

#include <iosfwd>

namespace neurocap::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kDataError = 2, kNumericError = 3 };

/// Parses `argv` (argv[0] is the program name, argv[1] the subcommand), runs
/// one pipeline stage and maps failures onto ExitCode. Logs go to `err`,
/// short result summaries to `out`.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace neurocap::cli
