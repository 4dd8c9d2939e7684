#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mmspace {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name). Output goes to
/// `out`; errors go to `err` as {"error": kind, "message": text}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mmspace
