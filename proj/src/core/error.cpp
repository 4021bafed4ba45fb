#include "core/error.hpp"

namespace tmlogic {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::OutOfRange: return "out-of-range";
    case ErrorCode::ResourceExhausted: return "resource-exhausted";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::UnknownPredicate: return "unknown-predicate";
    case ErrorCode::Rebinding: return "rebinding";
    case ErrorCode::ArityMismatch: return "arity-mismatch";
    case ErrorCode::UnboundVariable: return "unbound-variable";
    case ErrorCode::UnknownTrack: return "unknown-track";
    case ErrorCode::TrackMismatch: return "track-mismatch";
    case ErrorCode::NotDeterministic: return "not-deterministic";
    case ErrorCode::StateCapExceeded: return "state-cap-exceeded";
    case ErrorCode::Noncountable: return "noncountable";
    case ErrorCode::Insufficient: return "insufficient";
    case ErrorCode::Ambiguous: return "ambiguous";
    case ErrorCode::Disagreement: return "disagreement";
    case ErrorCode::Io: return "io";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace tmlogic
