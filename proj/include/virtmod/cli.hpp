#pragma once

// The virtmod command line as a library call, so tests can drive it in-process.
//
// Exit codes: 0 success, 1 mathematical negative (not realizable, invalid
// diagram, no extract, ...), 2 input error, 3 enumeration budget exceeded.

#include <ostream>
#include <string>
#include <vector>

namespace virtmod::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2, kBudget = 3 };

/// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace virtmod::cli
