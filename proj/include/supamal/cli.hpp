#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace supamal {

/// Exit codes of the command-line front end.
enum ExitCode : int { kOk = 0, kInvalid = 1, kUsage = 2, kBound = 3 };

/// Runs `supamal` with `args` (program name excluded).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace supamal
