#pragma once

#include <stdexcept>
#include <string>

namespace cantor {

enum class ErrorCode {
  Parse,
  Degenerate,
  Unsupported,
  Domain,
  Ambiguous,
  Precondition,
  Cap,
  Numeric,
  Io,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace cantor
