#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gnp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalidConfig = 2;

/// Runs one command. `args` excludes the program name; primary output goes to `out`,
/// diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gnp::cli
