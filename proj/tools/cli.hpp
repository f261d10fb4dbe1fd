#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sgws::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitStatus : int { kOk = 0, kValidationError = 1, kNumericError = 2 };

/// Runs one command. `args` excludes the program name. Reports go to `out`
/// (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sgws::cli
