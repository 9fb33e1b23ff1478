#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace binomcoll::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitRuntime = 1,
    kExitUsage = 2,
    kExitVerifyFailed = 3,
};

// Runs one command line (args excludes the program name). Records go to
// `out` unless --output is given; diagnostics always go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Accepts plain decimal digits or "base^exponent".
std::string expand_decimal(const std::string& text);

} // namespace binomcoll::cli
