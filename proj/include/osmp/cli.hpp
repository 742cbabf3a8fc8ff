// Command-line front end: bounds, simulate, verify, dcc and rank.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace osmp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // internal failure or property violation
inline constexpr int kExitConfig = 2;   // invalid configuration or arguments

/// Runs one invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace osmp
