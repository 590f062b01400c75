#pragma once

namespace lindgeo::cli {

enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

/// Parses argv, runs the selected subcommand and returns the process exit code.
int run(int argc, char** argv);

}  // namespace lindgeo::cli
