#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stackydeg {

enum ExitCode : int { kOk = 0, kEngineFailure = 1, kInputError = 2 };

/// Runs the command line front end. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Polynomial degree cap for parsed inputs: STACKYDEG_MAX_DEG or 64.
long max_input_degree();

}  // namespace stackydeg
