#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qfourier/error.hpp"
#include "qfourier/qseries.hpp"

using namespace qfourier;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("QParams rejects q outside (0,1) and v <= -1") {
  CHECK_THROWS_AS(QParams(1.5, 0.5), Error);
  CHECK_THROWS_AS(QParams(0.0, 0.5), Error);
  CHECK_THROWS_AS(QParams(1.0, 0.5), Error);
  CHECK_THROWS_AS(QParams(0.5, -1.0), Error);
  try {
    QParams(1.5, 0.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidParams);
    CHECK(std::string(e.what()).find("0 < q < 1") != std::string::npos);
  }
  const QParams p(0.5, 0.5);
  CHECK(p.q2() == 0.25);
  CHECK(p.weight_exponent() == 3.0);
}

TEST_CASE("finite q-Pochhammer recurrence") {
  for (double a : {-2.0, 0.3, 0.9}) {
    for (double q : {0.25, 0.5, 0.81}) {
      for (unsigned n = 0; n < 12; ++n) {
        const double lhs = qpoch_finite(a, q, n + 1);
        const double rhs = qpoch_finite(a, q, n) * (1.0 - a * std::pow(q, n));
        CHECK(std::abs(lhs - rhs) <= 1e-15 * std::max(1.0, std::abs(rhs)));
      }
    }
  }
  CHECK(qpoch_finite(0.7, 0.5, 0) == 1.0);
}

TEST_CASE("infinite q-Pochhammer against frozen high-precision values") {
  const PrecisionCtx ctx;
  CHECK(rel(qpoch_inf(0.25, 0.25, ctx), 0.6885375371203397154565) < 4e-16);
  // (-1; 1/2)_inf = 2 (-1/2; 1/2)_inf.
  CHECK(rel(qpoch_inf(-1.0, 0.5, ctx), 4.768462058062743448300) < 4e-16);
  CHECK(rel(qexp(-4.0, 0.25, ctx), 0.07375122541538011255) < 4e-16);
  CHECK(qpoch_inf(1.0 / 0.5, 0.5, ctx) == 0.0);  // factor 1 - 2 * 0.5 vanishes
  CHECK_THROWS_AS(qpoch_inf(1.0, 0.5, ctx), Error);
}

TEST_CASE("infinite q-Pochhammer against the direct product oracle") {
  const PrecisionCtx ctx;
  for (double a : {-4.0, -1.0, -0.3, 0.2, 0.75}) {
    for (double q : {0.25, 0.5, 0.81, 0.95}) {
      CHECK(rel(qpoch_inf(a, q, ctx), oracle::qpoch_product(a, q)) < 1e-14);
    }
  }
}

TEST_CASE("infinite product splits at K") {
  const PrecisionCtx ctx;
  for (double a : {-0.7, 0.3, 0.6}) {
    const double full = qpoch_inf(a, 0.5, ctx);
    for (unsigned k : {1u, 5u, 10u}) {
      const double split = qpoch_finite(a, 0.5, k) * qpoch_inf(a * std::pow(0.5, k), 0.5, ctx);
      CHECK(rel(split, full) < 1e-15);
    }
  }
}

TEST_CASE("q-exponential is the reciprocal product and matches its series") {
  const PrecisionCtx ctx;
  for (double q : {0.25, 0.5, 0.81}) {
    for (double z : {-4.0, -1.0, -0.5, 0.0, 0.3, 0.9}) {
      CHECK(std::abs(qexp(z, q, ctx) * qpoch_inf(z, q, ctx) - 1.0) < 1e-12);
    }
    for (double z : {-0.9, -0.5, 0.1, 0.6}) {
      CHECK(std::abs(oracle::qexp_series(z, q, 400) - qexp(z, q, ctx)) < 1e-12 * qexp(z, q, ctx));
    }
  }
  CHECK_THROWS_AS(qexp(1.0, 0.5, ctx), Error);
  try {
    qexp(1.2, 0.5, ctx);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PoleAtOne);
  }
}

TEST_CASE("high-precision and binary64 paths agree") {
  const PrecisionCtx ctx;
  const mpfr_prec_t bits = bits_for_digits(40);
  for (double a : {-3.0, 0.4}) {
    const double d = qpoch_inf(a, 0.7, ctx);
    const double h = qpoch_inf(BigFloat(a, bits), BigFloat(0.7, bits), ctx).to_double();
    CHECK(rel(d, h) < 1e-14);
  }
}

TEST_CASE("normalization constant") {
  const PrecisionCtx ctx;
  CHECK(rel(c_qv(QParams(0.5, 0.0), ctx), 2.0) < 1e-15);
  CHECK(rel(c_qv(QParams(0.5, 0.5), ctx), 2.43659884426491446208) < 1e-15);
  CHECK(rel(c_qv(QParams(0.8, 0.5), ctx), 9.16343890855707320858) < 1e-15);
  // q = 0.9 taken as the binary64 value, not 9/10. The binary64 products run over a few
  // hundred factors, so rounding accumulates to about ten ulp.
  CHECK(rel(c_qv(QParams(0.9, 0.5), ctx), 25.5599099195767407817) < 1e-14);
  CHECK(rel(c_qv(QParams(0.9, 0.5), ctx, bits_for_digits(40)).to_double(), 25.5599099195767407817) < 1e-16);
}

TEST_CASE("Gauss amplitude") {
  const PrecisionCtx ctx;
  CHECK(rel(gauss_amplitude(1.0, QParams(0.5, 0.0), ctx), 1.0) < 1e-15);
  CHECK(rel(gauss_amplitude(1.0, QParams(0.5, 0.5), ctx), 1.681797235934866395901) < 1e-15);
  CHECK(rel(gauss_amplitude(0.3, QParams(0.8, 0.5), ctx), 7.194500178087087467837) < 1e-14);
  for (double t : {1e-3, 0.2, 1.0, 7.0, 300.0}) CHECK(gauss_amplitude(t, QParams(0.5, 0.0), ctx) > 0.0);
  CHECK_THROWS_AS(gauss_amplitude(0.0, QParams(0.5, 0.0), ctx), Error);
  // A(q^2 t) = q^{-2(v+1)} A(t) at and off the time lattice.
  for (double v : {0.0, 0.5, 1.5}) {
    const QParams p(0.5, v);
    for (double t : {1.0, 0.3}) {
      const double ref = gauss_amplitude(t, p, ctx);
      for (int m = -3; m <= 3; ++m) {
        const double s = std::pow(p.q2(), m);
        CHECK(rel(gauss_amplitude(t * s, p, ctx) * std::pow(s, v + 1.0), ref) < 1e-10);
      }
    }
  }
}

TEST_CASE("precision context validation and environment") {
  PrecisionCtx ctx;
  ctx.work_digits = 10;
  CHECK_THROWS_AS(ctx.validate(), Error);
  ctx.work_digits = 30;
  ctx.tail_tol = 0.0;
  CHECK_THROWS_AS(ctx.validate(), Error);
  setenv("QF_DIGITS", "64", 1);
  setenv("QF_TAIL_TOL", "1e-40", 1);
  const PrecisionCtx env = PrecisionCtx::from_env();
  CHECK(env.work_digits == 64);
  CHECK(env.tail_tol == 1e-40);
  unsetenv("QF_DIGITS");
  unsetenv("QF_TAIL_TOL");
  CHECK(PrecisionCtx::from_env().work_digits == PrecisionCtx().work_digits);
}
