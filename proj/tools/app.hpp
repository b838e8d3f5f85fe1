#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ubirk::app {

/// Exit statuses of the command-line tool.
enum Exit : int {
    kSuccess = 0,
    kNegative = 1,  // NO verdict, invalid certificate, no natural homomorphism
    kUsage = 2,     // bad arguments, unreadable or malformed files
    kCap = 3,       // a configured cap stopped the computation
    kInternal = 4,  // an identity that must hold failed
};

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ubirk::app
