#pragma once

#include <stdexcept>
#include <string>

namespace hgd {

enum class ErrorCode {
  Parse = 1,
  InvalidArgument = 2,
  Precondition = 3,
  Budget = 4,
  Cap = 5,
  Io = 6,
  Internal = 7,
};

// Every module reports failures by throwing this type; the C API turns it
// into a status code plus message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace hgd
