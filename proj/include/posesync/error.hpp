#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace posesync {

enum class ErrorKind {
  io,                // file could not be read or written
  schema,            // input violates the interchange format or a data invariant
  invalid_argument,  // caller-supplied parameter out of range
  incomparable,      // no valid joints/keypoints shared by the frames being compared
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Same error with `context: ` prepended to the message.
  Error with_context(std::string_view context) const;

 private:
  ErrorKind kind_;
};

}  // namespace posesync
