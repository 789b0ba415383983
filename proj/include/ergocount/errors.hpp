#ifndef ERGOCOUNT_ERRORS_HPP
#define ERGOCOUNT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ergo {

enum class ErrorCode {
  InvalidArgument,
  BudgetExceeded,
  Io,
  Parse,
  Internal,
};

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

}  // namespace ergo

#endif
