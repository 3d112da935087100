#include "qfourier/qseries.hpp"

#include <cmath>
#include <string>

#include "qfourier/error.hpp"

namespace qfourier {

namespace {

constexpr long kMaxFactors = 10'000'000;

void require_base(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorCode::InvalidParams, "q must satisfy 0 < q < 1, got " + std::to_string(q));
  }
}

void require_base(const BigFloat& q) {
  if (!(q.sign() > 0 && q < BigFloat(1L, q.precision()))) {
    throw Error(ErrorCode::InvalidParams, "q must satisfy 0 < q < 1");
  }
}

}  // namespace

QParams::QParams(double q, double v) : q_(q), v_(v) {
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorCode::InvalidParams, "q must satisfy 0 < q < 1, got " + std::to_string(q));
  }
  if (!(v > -1.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidParams, "v must satisfy v > -1, got " + std::to_string(v));
  }
}

double qpoch_finite(double a, double q, unsigned n) {
  require_base(q);
  double prod = 1.0;
  double term = a;
  for (unsigned k = 0; k < n; ++k) {
    prod *= 1.0 - term;
    term *= q;
  }
  return prod;
}

BigFloat qpoch_finite(const BigFloat& a, const BigFloat& q, unsigned n) {
  require_base(q);
  const BigFloat one(1L, a.precision());
  BigFloat prod = one;
  BigFloat term = a;
  for (unsigned k = 0; k < n; ++k) {
    prod *= one - term;
    term *= q;
  }
  return prod;
}

double qpoch_inf(double a, double q, const PrecisionCtx& ctx) {
  require_base(q);
  ctx.validate();
  if (!std::isfinite(a)) throw Error(ErrorCode::NonConvergent, "non-finite argument");
  if (a == 1.0) throw Error(ErrorCode::NonConvergent, "leading factor 1 - a vanishes at a = 1");
  double prod = 1.0;
  double term = a;
  for (long k = 0; k < kMaxFactors; ++k) {
    if (std::abs(term) < ctx.tail_tol) return prod;
    const double factor = 1.0 - term;
    if (factor == 0.0) return 0.0;
    prod *= factor;
    term *= q;
  }
  throw Error(ErrorCode::NonConvergent, "product did not reach tail_tol");
}

BigFloat qpoch_inf(const BigFloat& a, const BigFloat& q, const PrecisionCtx& ctx) {
  require_base(q);
  ctx.validate();
  const mpfr_prec_t bits = a.precision();
  const BigFloat one(1L, bits);
  if (a == one) throw Error(ErrorCode::NonConvergent, "leading factor 1 - a vanishes at a = 1");
  const long stop_exp = -static_cast<long>(bits) - 1;
  BigFloat prod = one;
  BigFloat term = a;
  for (long k = 0; k < kMaxFactors; ++k) {
    if (term.exponent2() < stop_exp && std::abs(term.to_double()) < ctx.tail_tol) return prod;
    BigFloat factor = one - term;
    if (factor.is_zero()) return BigFloat(bits);
    prod *= factor;
    term *= q;
  }
  throw Error(ErrorCode::NonConvergent, "product did not reach tail_tol");
}

double c_qv(const QParams& p, const PrecisionCtx& ctx) {
  const double q2 = p.q2();
  return qpoch_inf(std::pow(p.q(), p.weight_exponent()), q2, ctx) / qpoch_inf(q2, q2, ctx) / (1.0 - p.q());
}

BigFloat c_qv(const QParams& p, const PrecisionCtx& ctx, mpfr_prec_t bits) {
  const BigFloat q(p.q(), bits);
  const BigFloat q2 = q * q;
  const BigFloat a = q.pow(BigFloat(p.weight_exponent(), bits));
  return qpoch_inf(a, q2, ctx) / qpoch_inf(q2, q2, ctx) / (BigFloat(1L, bits) - q);
}

double qexp(double z, double q, const PrecisionCtx& ctx) {
  if (!(z < 1.0)) throw Error(ErrorCode::PoleAtOne, "q-exponential requires z < 1, got " + std::to_string(z));
  return 1.0 / qpoch_inf(z, q, ctx);
}

BigFloat qexp(const BigFloat& z, const BigFloat& q, const PrecisionCtx& ctx) {
  if (!(z < BigFloat(1L, z.precision()))) throw Error(ErrorCode::PoleAtOne, "q-exponential requires z < 1");
  return BigFloat(1L, z.precision()) / qpoch_inf(z, q, ctx);
}

double gauss_amplitude(double t, const QParams& p, const PrecisionCtx& ctx) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw Error(ErrorCode::InvalidParams, "Gauss amplitude requires t > 0");
  }
  const double q = p.q();
  const double q2 = p.q2();
  const double num = qpoch_inf(-std::pow(q, p.weight_exponent()) * t, q2, ctx) *
                     qpoch_inf(-std::pow(q, -2.0 * p.v()) / t, q2, ctx);
  const double den = qpoch_inf(-t, q2, ctx) * qpoch_inf(-q2 / t, q2, ctx);
  return num / den;
}

BigFloat gauss_amplitude(double t, const QParams& p, const PrecisionCtx& ctx, mpfr_prec_t bits) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw Error(ErrorCode::InvalidParams, "Gauss amplitude requires t > 0");
  }
  const BigFloat q(p.q(), bits);
  const BigFloat q2 = q * q;
  const BigFloat tt(t, bits);
  const BigFloat a1 = -(q.pow(BigFloat(p.weight_exponent(), bits)) * tt);
  const BigFloat a2 = -(q.pow(BigFloat(-2.0 * p.v(), bits)) / tt);
  const BigFloat num = qpoch_inf(a1, q2, ctx) * qpoch_inf(a2, q2, ctx);
  const BigFloat den = qpoch_inf(-tt, q2, ctx) * qpoch_inf(-(q2 / tt), q2, ctx);
  return num / den;
}

}  // namespace qfourier
