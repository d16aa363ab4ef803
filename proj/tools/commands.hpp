#pragma once

#include <string>
#include <vector>

namespace delone::cli {

enum ExitCode : int { kOk = 0, kPropertyFails = 1, kUsage = 2, kIo = 3 };

/// Parses argv and runs the selected subcommand. Never throws.
int run(int argc, char** argv);

}  // namespace delone::cli
