#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lensspec::cli {

/// Exit codes: 0 success or affirmative verdict, 1 negative verdict,
/// 2 usage or validation error.
enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2 };

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lensspec::cli
