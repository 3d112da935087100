#pragma once

#include "qfourier/bigfloat.hpp"
#include "qfourier/precision.hpp"

namespace qfourier {

// Lattice base q and Bessel order v, validated on construction (0 < q < 1, v > -1).
class QParams {
public:
  QParams(double q, double v);

  double q() const { return q_; }
  double v() const { return v_; }
  double q2() const { return q_ * q_; }
  // Exponent of x in the Jackson weight, including the d_q x factor.
  double weight_exponent() const { return 2.0 * v_ + 2.0; }

  bool operator==(const QParams&) const = default;

private:
  double q_;
  double v_;
};

// prod_{k<n} (1 - a q^k).
double qpoch_finite(double a, double q, unsigned n);
BigFloat qpoch_finite(const BigFloat& a, const BigFloat& q, unsigned n);

// prod_{k>=0} (1 - a q^k), truncated once |a| q^K < tail_tol.
// The high-precision overload also stops at the working precision of `a`.
double qpoch_inf(double a, double q, const PrecisionCtx& ctx);
BigFloat qpoch_inf(const BigFloat& a, const BigFloat& q, const PrecisionCtx& ctx);

// (1/(1-q)) (q^{2v+2};q^2)_inf / (q^2;q^2)_inf.
double c_qv(const QParams& p, const PrecisionCtx& ctx);
BigFloat c_qv(const QParams& p, const PrecisionCtx& ctx, mpfr_prec_t bits);

// e(z,q) = 1/(z;q)_inf for z < 1.
double qexp(double z, double q, const PrecisionCtx& ctx);
BigFloat qexp(const BigFloat& z, const BigFloat& q, const PrecisionCtx& ctx);

// A(t) = (-q^{2v+2}t, -q^{-2v}/t; q^2)_inf / (-t, -q^2/t; q^2)_inf for t > 0.
double gauss_amplitude(double t, const QParams& p, const PrecisionCtx& ctx);
BigFloat gauss_amplitude(double t, const QParams& p, const PrecisionCtx& ctx, mpfr_prec_t bits);

}  // namespace qfourier
