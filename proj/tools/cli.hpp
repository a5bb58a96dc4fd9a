#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace steiner::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInputError = 2, kInternalError = 3 };

/// Runs the command line `args` (args[0] is the program name). Normal output
/// goes to `out`; diagnostics and the config echo go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace steiner::cli
