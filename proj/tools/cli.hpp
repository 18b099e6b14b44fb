#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace itrace::cli {

enum ExitCode : int
{
  kSuccess = 0,
  kInputError = 1,
  kVerificationFailure = 2,
};

/// Runs one CLI invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace itrace::cli
