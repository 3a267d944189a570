#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adqs::cli {

enum ExitCode : int {
    kOk = 0,
    kValidationFailed = 1,
    kBadArguments = 2,
    kIntegrationFailed = 3,
    kPartialSweep = 4,
};

/// Runs the command line `args` (without the program name). Results go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adqs::cli
