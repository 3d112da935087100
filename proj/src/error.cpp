#include "qfourier/error.hpp"

namespace qfourier {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::PoleAtOne: return "PoleAtOne";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::OffGrid: return "OffGrid";
    case ErrorCode::OffWindow: return "OffWindow";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotProbability: return "NotProbability";
  }
  return "Unknown";
}

}  // namespace qfourier
