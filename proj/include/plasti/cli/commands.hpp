#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace plasti::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kError = 2 };

/// Runs one `plasti` invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plasti::cli
