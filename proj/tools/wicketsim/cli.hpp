#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wicketsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. args[0] is the program name.
/// Exit codes: 0 success, 1 runtime failure, 2 usage or validation error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wicketsim::cli
