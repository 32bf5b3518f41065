#pragma once

#include <string>

#include "hypersum/real.hpp"

namespace hypersum {

/// Complex number over Real. std::complex is unspecified for non-builtin
/// element types, so the handful of operations needed here are spelled out.
struct Complex {
  Real re;
  Real im;

  explicit Complex(long precision = kMinPrecision) : re(precision), im(precision) {}
  explicit Complex(Real real) : re(std::move(real)), im(re.precision()) {}
  Complex(Real real, Real imag) : re(std::move(real)), im(std::move(imag)) {
    if (re.precision() != im.precision())
      throw precision_mismatch("complex parts differ in precision");
  }
  Complex(double real, double imag, long precision)
      : re(real, precision), im(imag, precision) {}

  long precision() const noexcept { return re.precision(); }
  bool is_zero() const noexcept { return re.is_zero() && im.is_zero(); }
  bool is_real() const noexcept { return im.is_zero(); }
  bool is_finite() const noexcept { return re.is_finite() && im.is_finite(); }

  Complex operator-() const { return Complex(-re, -im); }

  friend Complex operator+(const Complex& a, const Complex& b) {
    return Complex(a.re + b.re, a.im + b.im);
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return Complex(a.re - b.re, a.im - b.im);
  }
  friend Complex operator*(const Complex& a, const Complex& b) {
    if (a.is_real() && b.is_real()) return Complex(a.re * b.re);
    return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    if (b.is_real()) return Complex(a.re / b.re, a.im / b.re);
    Real den = b.re * b.re + b.im * b.im;
    return Complex((a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den);
  }
  friend Complex operator*(const Complex& a, const Real& b) { return Complex(a.re * b, a.im * b); }
  friend Complex operator*(const Complex& a, long b) { return Complex(a.re * b, a.im * b); }
  friend Complex operator/(const Complex& a, long b) { return Complex(a.re / b, a.im / b); }
  friend Complex operator+(const Complex& a, long b) { return Complex(a.re + b, a.im); }
  friend Complex operator-(const Complex& a, long b) { return Complex(a.re - b, a.im); }

  Complex& operator+=(const Complex& b) { return *this = *this + b; }
  Complex& operator-=(const Complex& b) { return *this = *this - b; }
  Complex& operator*=(const Complex& b) { return *this = *this * b; }
  Complex& operator/=(const Complex& b) { return *this = *this / b; }

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
  }

  /// "re" for real values, "re+imi" / "re-imi" otherwise.
  std::string to_string() const { return to_string(re.round_trip_digits()); }
  std::string to_string(int digits) const {
    if (is_real()) return re.to_string(digits);
    std::string i = im.to_string(digits);
    if (i.front() != '-') i.insert(i.begin(), '+');
    return re.to_string(digits) + i + "i";
  }
};

inline Real abs(const Complex& z) { return hypot(z.re, z.im); }

inline Complex exp(const Complex& z) {
  Real mag = exp(z.re);
  if (z.is_real()) return Complex(mag);
  return Complex(mag * cos(z.im), mag * sin(z.im));
}

/// Principal branch.
inline Complex log(const Complex& z) {
  if (z.is_real() && z.re.sign() > 0) return Complex(log(z.re));
  return Complex(log(abs(z)), atan2(z.im, z.re));
}

inline Complex sin(const Complex& z) {
  if (z.is_real()) return Complex(sin(z.re));
  return Complex(sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im));
}

inline Complex cos(const Complex& z) {
  if (z.is_real()) return Complex(cos(z.re));
  return Complex(cos(z.re) * cosh(z.im), -(sin(z.re) * sinh(z.im)));
}

inline Complex sqrt(const Complex& z) {
  if (z.is_real() && z.re.sign() >= 0) return Complex(sqrt(z.re));
  return exp(log(z) / 2);
}

}  // namespace hypersum
