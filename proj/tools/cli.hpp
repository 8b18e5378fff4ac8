#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rcop::cli {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kInputError = 2,
    kModelPrecondition = 3,
    kCapability = 4,
    kVerificationFailure = 5,
};

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rcop::cli
