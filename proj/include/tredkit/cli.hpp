#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tredkit {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitVerification = 2;

/// Runs one command line (args excludes the program name) and returns the
/// exit code. Results go to `out`, diagnostics and timings to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tredkit
