#include "cantor/error.hpp"

namespace cantor {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Degenerate: return "degenerate";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Ambiguous: return "ambiguous";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::Cap: return "cap";
    case ErrorCode::Numeric: return "numeric";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace cantor
