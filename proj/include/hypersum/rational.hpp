#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "hypersum/error.hpp"

namespace hypersum {

using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Canonical "p/q" (or "p" when q = 1) in lowest terms.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw domain_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// Parses "p", "p/q" or a decimal literal ("-1.25", "3e-2") as an exact
/// rational. Decimals are scaled by powers of ten, never routed through
/// binary floating point.
inline Rational parse_rational(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto digits = [&](std::string& out) {
    std::size_t start = i;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) out.push_back(text[i++]);
    return i - start;
  };
  std::string sign;
  if (i < n && (text[i] == '-' || text[i] == '+')) {
    if (text[i] == '-') sign = "-";
    ++i;
  }
  std::string whole;
  std::size_t whole_len = digits(whole);
  if (i < n && text[i] == '/') {
    if (whole_len == 0) throw parse_error("expected digits before '/'", i);
    ++i;
    std::string den;
    if (digits(den) == 0) throw parse_error("expected denominator digits", i);
    if (i != n) throw parse_error("unexpected character", i);
    Integer d(den);
    if (d == 0) throw parse_error("zero denominator", i - den.size());
    Rational q(Integer(sign + whole), d);
    q.canonicalize();
    return q;
  }
  std::string frac;
  std::size_t frac_len = 0;
  if (i < n && text[i] == '.') {
    ++i;
    frac_len = digits(frac);
  }
  if (whole_len + frac_len == 0) throw parse_error("expected a number", i);
  long exponent = 0;
  if (i < n && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    std::string exp_sign;
    if (i < n && (text[i] == '-' || text[i] == '+')) {
      if (text[i] == '-') exp_sign = "-";
      ++i;
    }
    std::string exp_digits;
    if (digits(exp_digits) == 0) throw parse_error("expected exponent digits", i);
    if (exp_digits.size() > 6) throw parse_error("exponent out of range", i - exp_digits.size());
    exponent = std::stol(exp_sign + exp_digits);
  }
  if (i != n) throw parse_error("unexpected character", i);
  Integer mantissa(sign + (whole.empty() ? "0" : whole) + frac);
  exponent -= static_cast<long>(frac_len);
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational q = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale, 1);
  q.canonicalize();
  return q;
}

}  // namespace hypersum
