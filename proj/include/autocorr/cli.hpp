#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace autocorr::cli {

/// Process exit codes; each error family has its own code.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kUnknownState = 3,
  kParameterDomain = 4,
  kStateFormat = 5,
  kTolerance = 6,
  kConvergence = 7,
  kDomain = 8,
  kScale = 9,
  kChannel = 10,
  kPole = 11,
  kInsufficientData = 12,
  kOutput = 13,
  kInternal = 70,
};

/// Runs one command line (args exclude the program name). Artifacts go to
/// `out` unless --output names a file; errors go to `err` as one JSON line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace autocorr::cli
