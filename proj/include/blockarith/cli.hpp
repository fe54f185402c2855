#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blockarith {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUndecided = 3;
inline constexpr int kExitResource = 4;

/// Runs the command line (without the program name). The report goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blockarith
