#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qdet::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  ok = 0,
  usage_error = 1,  ///< bad arguments, unreadable or malformed input
  refused = 2,      ///< enumeration guard, unmet precondition, inapplicable route
  check_failed = 3  ///< a defining equation failed or routes disagree
};

/// Runs one invocation; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdet::cli
