#pragma once

namespace qfourier {

// Precision policy shared by every high-precision evaluation.
struct PrecisionCtx {
  int work_digits = 50;
  double tail_tol = 1e-30;

  // Throws InvalidParams unless work_digits >= 16 and 0 < tail_tol < 1.
  void validate() const;

  // Applies QF_DIGITS and QF_TAIL_TOL on top of the given context.
  static PrecisionCtx from_env(PrecisionCtx base);
  static PrecisionCtx from_env() { return from_env(PrecisionCtx()); }
};

}  // namespace qfourier
