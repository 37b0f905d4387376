// cli.hpp - command-line front end, callable in-process for testing
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lowdiss::cli {

enum ExitCode : int { kSuccess = 0, kRuntimeFailure = 1, kUsageError = 2 };

/// Runs one invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lowdiss::cli
