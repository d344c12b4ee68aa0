#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fixsat::cli {

/// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSolved = 10;
inline constexpr int kExitFailed = 20;

/// Runs the command line given without the program name.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace fixsat::cli
