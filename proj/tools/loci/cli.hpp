#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace loci::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 2,
  kDataError = 3,
  kProviderError = 4,
};

/// Runs `loci <subcommand> ...`. `args` excludes the program name.
/// Diagnostics go to `err` as a single line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace loci::cli
