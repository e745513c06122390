#include "posesync/error.hpp"

namespace posesync {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::io:
      return "io";
    case ErrorKind::schema:
      return "schema";
    case ErrorKind::invalid_argument:
      return "invalid_argument";
    case ErrorKind::incomparable:
      return "incomparable";
  }
  return "unknown";
}

Error Error::with_context(std::string_view context) const {
  std::string message(context);
  message += ": ";
  message += what();
  return Error(kind_, message);
}

}  // namespace posesync
