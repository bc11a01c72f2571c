#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace votemarket::cli {

/// Full command-line front end, parameterized on the output streams so tests
/// can drive it in-process. `args` excludes the program name. Returns the
/// process exit code: 0 on success, 1 on any validation or usage error,
/// 2 when `reproduce` finds a mismatch.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace votemarket::cli
