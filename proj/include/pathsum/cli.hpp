#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pathsum {

/// Dispatches one CLI invocation (arguments without the program name).
/// Exit codes: 0 success, 1 runtime/budget/output failures, 2 usage and
/// precondition violations.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pathsum
