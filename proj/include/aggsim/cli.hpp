#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aggsim {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitConfigError = 1, kExitPartialFailure = 2 };

/// Entry point for `aggsim run|sweep|stats|symmetry`. argv[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aggsim
