#pragma once

#include <stdexcept>
#include <string>

namespace qfourier {

enum class ErrorCode {
  InvalidParams,
  NonConvergent,
  PoleAtOne,
  PrecisionExhausted,
  GridMismatch,
  OffGrid,
  OffWindow,
  ParseError,
  NotProbability,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace qfourier
