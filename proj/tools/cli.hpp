#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ducci::cli {

enum ExitCode : int {
  kOk = 0,
  kMismatch = 1,  // a verification found a counterexample
  kUsage = 2,     // bad arguments, hypothesis violations, budget overruns
};

// Runs one CLI invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Parses "lo:hi" (inclusive), "a,b,c", or any comma-separated mix of both.
std::vector<unsigned long long> parse_range(const std::string& text);

}  // namespace ducci::cli
