#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace roumieu {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFail = 1;
inline constexpr int kExitInputError = 2;

inline constexpr int kReportVersion = 1;

/// Runs one command line (args excludes the program name). Reports go to
/// --out or `out`; diagnostics go to `err`. Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace roumieu
