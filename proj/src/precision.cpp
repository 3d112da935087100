#include "qfourier/precision.hpp"

#include <cstdlib>
#include <string>

#include "qfourier/error.hpp"

namespace qfourier {

void PrecisionCtx::validate() const {
  if (work_digits < 16) {
    throw Error(ErrorCode::InvalidParams, "work_digits must be >= 16, got " + std::to_string(work_digits));
  }
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
    throw Error(ErrorCode::InvalidParams, "tail_tol must satisfy 0 < tail_tol < 1");
  }
}

PrecisionCtx PrecisionCtx::from_env(PrecisionCtx base) {
  if (const char* s = std::getenv("QF_DIGITS"); s != nullptr && *s != '\0') {
    try {
      base.work_digits = std::stoi(s);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidParams, std::string("QF_DIGITS is not an integer: ") + s);
    }
  }
  if (const char* s = std::getenv("QF_TAIL_TOL"); s != nullptr && *s != '\0') {
    try {
      base.tail_tol = std::stod(s);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidParams, std::string("QF_TAIL_TOL is not a number: ") + s);
    }
  }
  base.validate();
  return base;
}

}  // namespace qfourier
