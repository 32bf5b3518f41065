#pragma once

// Closed-form summation and transformation formulas for terminating and
// unit-argument hypergeometric series: Gauss's 2F1 sum, the multiplication
// formula for Pochhammer symbols, the Askey-Ismail 4F3 -> 3F2 transformation
// and the confluent 2F1(-k, a; -k + eps; 1) limit.

#include <string>

#include "hypersum/gamma.hpp"
#include "hypersum/hyper_series.hpp"
#include "hypersum/pochhammer.hpp"

namespace hypersum {

struct GaussClosedForm {
  SphereValue value;
  /// Re(c - a - b) > 0, i.e. the 2F1 series converges to `value`.
  bool series_converges;
};

/// Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)), paired into two gamma
/// ratios so integer-shifted poles cancel.
inline GaussClosedForm gauss_closed_form(const Scalar& a, const Scalar& b, const Scalar& c,
                                         long precision = kDefaultPrecision) {
  const Scalar excess = c - a - b;
  const bool converges = excess.is_exact() ? excess.real_sign() > 0 : excess.real_double() > 0;
  // Pair (c, c-a) with (c-a-b, c-b) when a is an integer shift, otherwise
  // pair by b; both pairings are tried before giving up on a 0 * inf.
  auto pairing_a = [&] { return gamma_ratio(c, c - a, precision) * gamma_ratio(excess, c - b, precision); };
  auto pairing_b = [&] { return gamma_ratio(c, c - b, precision) * gamma_ratio(excess, c - a, precision); };
  const bool prefer_b = !as_integer(a) && as_integer(b);
  try {
    return {prefer_b ? pairing_b() : pairing_a(), converges};
  } catch (const indeterminate_error&) {
    try {
      return {prefer_b ? pairing_a() : pairing_b(), converges};
    } catch (const indeterminate_error&) {
      throw indeterminate_error("Gauss closed form at a=" + a.to_string() + ", b=" + b.to_string() +
                                ", c=" + c.to_string() + " has an unresolvable pole");
    }
  }
}

/// (base)_{n j} = n^{n j} prod_{i=1..n} ((base + i - 1)/n)_j.
inline Scalar pochhammer_multiplication_split(const Scalar& base, long n, long j) {
  if (n < 1) throw domain_error("multiplication split needs n >= 1");
  if (j < 0) throw domain_error("multiplication split needs j >= 0");
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(n * j));
  Scalar out{Rational(scale)};
  for (long i = 1; i <= n; ++i) out *= pochhammer((base + Scalar(i - 1)) / Scalar(n), j);
  return out;
}

/// The 4F3 side: 4F3(a/2, (a+1)/2, -k, c; d/2, (d+1)/2, -k+a+c+1-d; 1).
inline HypParams askey_ismail_lhs_params(const Scalar& a, const Scalar& c, const Scalar& d, long k) {
  if (k < 0) throw domain_error("k must be nonnegative");
  const Scalar two(2);
  return HypParams({a / two, (a + Scalar(1)) / two, Scalar(-k), c},
                   {d / two, (d + Scalar(1)) / two, Scalar(-k) + a + c + Scalar(1) - d});
}

inline EvalResult askey_ismail_lhs(const Scalar& a, const Scalar& c, const Scalar& d, long k,
                                   const EvalContext& ctx = {}) {
  return eval_at_1(askey_ismail_lhs_params(a, c, d, k), ctx);
}

/// (d-a)_k (d-c)_k / ((d-a-c)_k (d)_k) * 3F2(-k, a, c; k+d, d-c; 1).
inline EvalResult askey_ismail_rhs(const Scalar& a, const Scalar& c, const Scalar& d, long k,
                                   const EvalContext& ctx = {}) {
  if (k < 0) throw domain_error("k must be nonnegative");
  const Scalar prefactor_den = pochhammer(d - a - c, k) * pochhammer(d, k);
  if (prefactor_den.is_zero())
    throw pole_error("Askey-Ismail prefactor denominator (d-a-c)_k (d)_k vanishes");
  const Scalar prefactor = pochhammer(d - a, k) * pochhammer(d - c, k) / prefactor_den;
  HypParams series({Scalar(-k), a, c}, {Scalar(k) + d, d - c});
  EvalResult r = eval_at_1(series, ctx);
  r.value = SphereValue(prefactor * r.value.value());
  return r;
}

/// Re(d) > Re(a) > 0, the condition under which the transformation is
/// stated for nonterminating use. Terminating evaluations do not need it.
inline bool askey_ismail_condition(const Scalar& a, const Scalar& d) {
  const Scalar gap = d - a;
  auto positive = [](const Scalar& s) { return s.is_exact() ? s.real_sign() > 0 : s.real_double() > 0; };
  return positive(gap) && positive(a);
}

/// Value of both sides as c -> k + d: the left side becomes
/// 4F3(a/2, (a+1)/2, -k, k+d; d/2, (d+1)/2, a+1; 1) and the right side
/// collapses to (d-a)_k / (d)_k through the 2F1 limit below.
inline Scalar askey_ismail_limit(const Scalar& a, const Scalar& d, long k) {
  if (k < 0) throw domain_error("k must be nonnegative");
  const Scalar den = pochhammer(d, k);
  if (den.is_zero()) throw pole_error("(d)_k vanishes");
  return pochhammer(d - a, k) / den;
}

/// lim_{eps -> 0} 2F1(-k, a; -k + eps; 1) = (-k-a)_k / (-k)_k.
inline Scalar terminating_2f1_limit(long k, const Scalar& a) {
  if (k < 0) throw domain_error("k must be nonnegative");
  if (k == 0) return Scalar(1);
  return pochhammer(Scalar(-k) - a, k) / pochhammer(Scalar(-k), k);
}

}  // namespace hypersum
