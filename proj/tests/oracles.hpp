#pragma once

// Reference implementations that share no code with the library.

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <limits>

namespace oracle {

// j_v(2^{-n}, 1/4) for q = 1/2 and q^{2v+2} = 2^{-two_v_plus_2}, summed exactly in
// rationals over `terms` terms and rounded once to binary64.
inline double jv_half_exact(int n, int two_v_plus_2, int terms = 60) {
  const mpq_class q2(1, 4);
  const mpq_class a(1, mpz_class(1) << two_v_plus_2);
  mpq_class sum(0);
  mpq_class poch_a(1);
  mpq_class poch_q2(1);
  mpq_class a_pow(1);
  mpq_class q2_pow(1);
  for (int k = 0; k < terms; ++k) {
    if (k > 0) {
      poch_a *= 1 - a * a_pow;
      poch_q2 *= 1 - q2 * q2_pow;
      a_pow *= q2;
      q2_pow *= q2;
    }
    // q^{k(k+1)} x^{2k} = 2^{-k(k+1) - 2nk}
    const long e = -static_cast<long>(k) * (k + 1) - 2L * n * k;
    mpq_class p2(1);
    if (e >= 0) {
      p2 = mpq_class(mpz_class(1) << e, 1);
    } else {
      p2 = mpq_class(1, mpz_class(1) << -e);
    }
    p2.canonicalize();
    mpq_class term = p2 / (poch_a * poch_q2);
    if (k % 2 == 1) term = -term;
    sum += term;
  }
  mpfr_t r;
  mpfr_init2(r, 53);
  mpfr_set_q(r, sum.get_mpq_t(), MPFR_RNDN);
  const double out = mpfr_get_d(r, MPFR_RNDN);
  mpfr_clear(r);
  return out;
}

// (a; q)_inf by direct multiplication at 300 bits until the factors stop changing.
inline double qpoch_product(double a, double q) {
  mpfr_t prod, term, qk;
  mpfr_inits2(300, prod, term, qk, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_d(prod, 1.0, MPFR_RNDN);
  mpfr_set_d(qk, 1.0, MPFR_RNDN);
  for (int k = 0; k < 100000; ++k) {
    mpfr_mul_d(term, qk, a, MPFR_RNDN);
    if (mpfr_zero_p(term) || mpfr_get_exp(term) < -310) break;
    mpfr_ui_sub(term, 1, term, MPFR_RNDN);
    mpfr_mul(prod, prod, term, MPFR_RNDN);
    mpfr_mul_d(qk, qk, q, MPFR_RNDN);
  }
  const double out = mpfr_get_d(prod, MPFR_RNDN);
  mpfr_clears(prod, term, qk, static_cast<mpfr_ptr>(nullptr));
  return out;
}

// sum_{n < terms} z^n / (q; q)_n, valid for |z| < 1.
inline double qexp_series(double z, double q, int terms) {
  long double sum = 0.0L;
  long double term = 1.0L;
  long double qn = 1.0L;
  for (int n = 0; n < terms; ++n) {
    sum += term;
    qn *= q;
    term *= static_cast<long double>(z) / (1.0L - qn);
  }
  return static_cast<double>(sum);
}

// Distance in units in the last place between two doubles of the same sign.
inline double ulp_distance(double a, double b) {
  if (a == b) return 0.0;
  const double ulp = std::nextafter(std::abs(a), std::numeric_limits<double>::infinity()) - std::abs(a);
  return std::abs(a - b) / ulp;
}

}  // namespace oracle
