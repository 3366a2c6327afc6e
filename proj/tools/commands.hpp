// commands.hpp: the thermops command line, callable in-process

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thermops::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2 };

// args excludes the program name. Reports go to `out` unless --out is given.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thermops::cli
