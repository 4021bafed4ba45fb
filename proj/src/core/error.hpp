#pragma once

#include <stdexcept>
#include <string>

namespace tmlogic {

enum class ErrorCode {
  InvalidArgument,
  OutOfRange,
  ResourceExhausted,
  Parse,
  UnknownPredicate,
  Rebinding,
  ArityMismatch,
  UnboundVariable,
  UnknownTrack,
  TrackMismatch,
  NotDeterministic,
  StateCapExceeded,
  Noncountable,
  Insufficient,
  Ambiguous,
  Disagreement,
  Io,
  Internal,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Every failure inside the library is reported through this type; the C API
/// maps `code()` onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace tmlogic
