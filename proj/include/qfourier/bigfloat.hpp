#pragma once

#include <mpfr.h>

#include <string>

namespace qfourier {

// Bits of binary precision needed to carry the given number of decimal digits.
mpfr_prec_t bits_for_digits(int digits);

// Owning value wrapper around an mpfr_t. Binary operators produce a result at the
// larger precision of the operands; compound assignment keeps the left precision.
class BigFloat {
public:
  explicit BigFloat(mpfr_prec_t bits = 64);
  BigFloat(double value, mpfr_prec_t bits);
  BigFloat(long value, mpfr_prec_t bits);
  static BigFloat from_string(const std::string& text, mpfr_prec_t bits);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  BigFloat with_precision(mpfr_prec_t bits) const;

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  std::string to_string(int digits) const;

  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  // Binary exponent e with |x| in [2^(e-1), 2^e); very negative for zero.
  long exponent2() const;
  // Natural log of |x|, computed without overflow; -inf for zero.
  double log_abs() const;

  BigFloat abs() const;
  BigFloat operator-() const;
  BigFloat pow(long n) const;
  BigFloat pow(const BigFloat& e) const;
  BigFloat sqrt() const;

  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);
  BigFloat& operator*=(double rhs);

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.value_, b.value_); }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.value_, b.value_); }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.value_, b.value_); }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_); }

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

private:
  mpfr_t value_;
};

}  // namespace qfourier
