#pragma once

#include <ostream>

namespace knotlock::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kRejected = 1,   ///< protocol rejection or a malformed document
  kUsage = 2,      ///< bad flags, unreadable files, bad config
  kTransport = 3,  ///< socket failure
};

/// Runs the knotlock command line against the given streams.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace knotlock::cli
