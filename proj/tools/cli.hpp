#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace parazone::cli {

enum ExitStatus : int { kOk = 0, kDomainError = 1, kUsageError = 2, kBudgetExceeded = 3 };

/// Runs one command line (without the program name). Primary text output
/// goes to `out` unless --out names a file; diagnostics go to `err`. A run
/// manifest is written next to --out, or to --manifest when given.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace parazone::cli
