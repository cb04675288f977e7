#pragma once

// The command-line front end. Exit statuses: 0 ok, 1 law failure, 2 input
// error, 3 budget or window exceeded.

#include <iosfwd>
#include <string>
#include <vector>

namespace opbim {

enum ExitStatus : int { exit_ok = 0, exit_law_failure = 1, exit_input_error = 2, exit_budget = 3 };

/// Runs one command; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opbim
