#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kgen::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNotConverged = 2;

/// Runs the command line `args` (args[0] is the program name). Tables go to
/// `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Value printed with 10 significant digits.
std::string format_number(double v);

}  // namespace kgen::cli
