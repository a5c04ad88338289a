#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qfluct::cli {

// Exit codes
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kNumerical = 3;

/// Runs one command line (args[0] is the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfluct::cli
