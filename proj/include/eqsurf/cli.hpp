#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace eqsurf {

enum ExitCode : int { kExitOk = 0, kExitDomain = 1, kExitVerify = 2 };

/// Runs the eqsurf command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eqsurf
