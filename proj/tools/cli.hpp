#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ramcalc::cli {

/// Exit codes: 0 pass, 1 verification failure, 2 usage or parse error.
enum ExitCode { kPass = 0, kFail = 1, kUsage = 2 };

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ramcalc::cli
