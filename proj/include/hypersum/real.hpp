#pragma once

// RAII wrapper around an MPFR floating point number.
//
// Every Real carries its own binary precision. Arithmetic between two Reals
// of different precision throws precision_mismatch instead of silently
// rounding one operand; the result of an operation has the common precision.

#include <mpfr.h>

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>
#include <utility>

#include "hypersum/error.hpp"

namespace hypersum {

inline constexpr long kMinPrecision = 53;

class Real {
 public:
  explicit Real(long precision = kMinPrecision) {
    mpfr_init2(v_, checked(precision));
    mpfr_set_zero(v_, 1);
  }
  Real(double value, long precision) {
    mpfr_init2(v_, checked(precision));
    mpfr_set_d(v_, value, MPFR_RNDN);
  }
  Real(const mpq_class& value, long precision) {
    mpfr_init2(v_, checked(precision));
    mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
  }
  Real(const mpz_class& value, long precision) {
    mpfr_init2(v_, checked(precision));
    mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
  }
  /// Parses a decimal literal ("1.25", "-3e-4"). Throws parse_error.
  Real(std::string_view decimal, long precision) {
    mpfr_init2(v_, checked(precision));
    std::string s(decimal);
    char* end = nullptr;
    if (!s.empty()) mpfr_strtofr(v_, s.c_str(), &end, 10, MPFR_RNDN);
    if (s.empty() || *end != '\0') {
      std::size_t pos = s.empty() ? 0 : static_cast<std::size_t>(end - s.c_str());
      mpfr_clear(v_);
      throw parse_error("malformed decimal '" + s + "'", pos);
    }
  }

  Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_swap(v_, other.v_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  long precision() const noexcept { return static_cast<long>(mpfr_get_prec(v_)); }
  /// Copy rounded (or widened) to another precision.
  Real rounded(long precision) const {
    Real r(precision);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }
  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_ptr get() noexcept { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  int sign() const noexcept { return mpfr_sgn(v_); }

  /// Scientific notation with enough digits to round-trip at this precision.
  std::string to_string() const { return to_string(round_trip_digits()); }
  std::string to_string(int significant_digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", significant_digits - 1, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }
  int round_trip_digits() const {
    return static_cast<int>(std::ceil(static_cast<double>(precision()) * 0.30102999566398120)) + 1;
  }

  Real operator-() const {
    Real r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  friend Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
  friend Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
  friend Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
  friend Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }
  Real& operator+=(const Real& b) { return *this = *this + b; }
  Real& operator-=(const Real& b) { return *this = *this - b; }
  Real& operator*=(const Real& b) { return *this = *this * b; }
  Real& operator/=(const Real& b) { return *this = *this / b; }

  friend Real operator+(const Real& a, long b) { return a + Real(static_cast<double>(b), a.precision()); }
  friend Real operator-(const Real& a, long b) { return a - Real(static_cast<double>(b), a.precision()); }
  friend Real operator*(const Real& a, long b) {
    Real r(a.precision());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, long b) {
    Real r(a.precision());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }

  template <class Op>
  static Real unary(const Real& a, Op op) {
    Real r(a.precision());
    op(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return b <= a; }

 private:
  static mpfr_prec_t checked(long precision) {
    if (precision < kMinPrecision || precision > MPFR_PREC_MAX)
      throw domain_error("float precision must be at least 53 bits, got " +
                         std::to_string(precision));
    return static_cast<mpfr_prec_t>(precision);
  }

  template <class Op>
  static Real binary(const Real& a, const Real& b, Op op) {
    if (a.precision() != b.precision())
      throw precision_mismatch("mixing " + std::to_string(a.precision()) + "-bit and " +
                               std::to_string(b.precision()) + "-bit floats");
    Real r(a.precision());
    op(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
};

inline Real sqrt(const Real& x) { return Real::unary(x, mpfr_sqrt); }
inline Real exp(const Real& x) { return Real::unary(x, mpfr_exp); }
inline Real log(const Real& x) { return Real::unary(x, mpfr_log); }
inline Real sin(const Real& x) { return Real::unary(x, mpfr_sin); }
inline Real cos(const Real& x) { return Real::unary(x, mpfr_cos); }
inline Real sinh(const Real& x) { return Real::unary(x, mpfr_sinh); }
inline Real cosh(const Real& x) { return Real::unary(x, mpfr_cosh); }
inline Real abs(const Real& x) {
  Real r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

inline Real pow(const Real& x, unsigned long n) {
  Real r(x.precision());
  mpfr_pow_ui(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

inline Real atan2(const Real& y, const Real& x) {
  Real r(y.precision());
  if (y.precision() != x.precision()) throw precision_mismatch("atan2 precision mismatch");
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

inline Real hypot(const Real& a, const Real& b) {
  if (a.precision() != b.precision()) throw precision_mismatch("hypot precision mismatch");
  Real r(a.precision());
  mpfr_hypot(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

inline Real round_to_integer(const Real& x) {
  Real r(x.precision());
  mpfr_round(r.get(), x.get());
  return r;
}

inline Real pi(long precision) {
  Real r(precision);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

/// Converts an integer-valued Real to long; caller ensures it fits.
inline long to_long(const Real& x) { return mpfr_get_si(x.get(), MPFR_RNDN); }

}  // namespace hypersum
