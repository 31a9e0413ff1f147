#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sparsos {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMathematical = 1;
inline constexpr int kExitUsage = 2;

/// Runs the tool on args (without the program name). Machine output goes to
/// out, logs and diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sparsos
