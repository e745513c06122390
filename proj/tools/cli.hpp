#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace posesync::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,     // unreadable / malformed input or invalid parameters
  kIncomparable = 2,   // the sequences share no comparable frames
};

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace posesync::cli
