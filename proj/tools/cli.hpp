#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace k3lat {

/// Exit codes: 0 pass/found, 1 fail/not found, 2 usage or malformed input,
/// 3 resource cap.
enum ExitCode { kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitCap = 3 };

/// Runs one command line (args exclude the program name). Reports go to `out`
/// as canonical JSON; "-" in a file slot reads `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace k3lat
