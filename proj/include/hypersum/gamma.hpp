#pragma once

// Gamma function on the Riemann sphere.
//
// Floats use the Lanczos approximation with Godfrey's g = 607/128, n = 15
// coefficients on Re(x) >= 1/2 and the reflection formula elsewhere. The
// coefficients bound the relative error near 1e-15 at any precision.
// Evaluation runs with guard bits and a reduced sine argument.

#include <array>
#include <cstdlib>
#include <map>
#include <optional>
#include <vector>

#include "hypersum/pochhammer.hpp"
#include "hypersum/scalar.hpp"

namespace hypersum {

inline constexpr long kDefaultPrecision = 256;

namespace detail {

inline constexpr std::array<const char*, 15> kLanczosCoefficients = {
    "0.99999999999999709182",    "57.156235665862923517",     "-59.597960355475491248",
    "14.136097974741747174",     "-0.49191381609762019978",   "0.33994649984811888699e-4",
    "0.46523628927048575665e-4", "-0.98374475304879564677e-4", "0.15808870322491248884e-3",
    "-0.21026444172410488319e-3", "0.21743961811521264320e-3", "-0.16431810653676389022e-3",
    "0.84418223983852743293e-4", "-0.26190838401581408670e-4", "0.36899182659531622704e-5"};

struct LanczosTable {
  std::vector<Real> c;
  Real g;
  Real half_log_two_pi;
};

inline const LanczosTable& lanczos_table(long precision) {
  thread_local std::map<long, LanczosTable> cache;
  auto it = cache.find(precision);
  if (it != cache.end()) return it->second;
  LanczosTable t;
  for (const char* s : kLanczosCoefficients) t.c.emplace_back(s, precision);
  t.g = Real(make_rational(607, 128), precision);
  t.half_log_two_pi = log(pi(precision) * 2) / 2;
  return cache.emplace(precision, std::move(t)).first->second;
}

/// Gamma on Re(x) >= 1/2.
inline Complex lanczos_gamma(const Complex& x) {
  const long prec = x.precision();
  const LanczosTable& t = lanczos_table(prec);
  Complex z = x - 1;
  Complex sum(t.c[0]);
  for (long k = 1; k < static_cast<long>(t.c.size()); ++k) {
    sum += Complex(t.c[k]) / (z + k);
  }
  Complex base = z + Complex(t.g + Real(0.5, prec));
  Complex exponent = (z + Complex(Real(0.5, prec))) * log(base) - base + Complex(t.half_log_two_pi);
  return exp(exponent) * sum;
}

/// Guard bits carried through the Lanczos sum and the reflection.
inline constexpr long kGammaGuardBits = 32;

/// sin(pi x) with the nearest integer to Re(x) removed first, so the
/// reflection stays accurate next to the poles.
inline Complex sin_pi(const Complex& x) {
  const Real n = round_to_integer(x.re);
  Complex r(x.re - n, x.im);
  Complex s = sin(r * pi(x.precision()));
  if (to_long(n) % 2 != 0) s = -s;
  return s;
}

/// Gamma of a float that is known not to be a pole.
inline Complex float_gamma(const Complex& x) {
  const long prec = x.precision();
  const long work = prec + kGammaGuardBits;
  const Complex xw(x.re.rounded(work), x.im.rounded(work));
  Complex g(work);
  if (xw.re >= Real(0.5, work)) {
    g = lanczos_gamma(xw);
  } else {
    Complex one(Real(1.0, work));
    g = Complex(pi(work)) / (sin_pi(xw) * lanczos_gamma(one - xw));
  }
  return Complex(g.re.rounded(prec), g.im.rounded(prec));
}

}  // namespace detail

/// Gamma at a positive integer or half-integer as coefficient * sqrt(pi)^power.
struct SqrtPiMultiple {
  Rational coefficient;
  int sqrt_pi_power;  // 0 or 1
};

/// Exact form of Gamma(x) for integers and half-integers off the poles.
inline std::optional<SqrtPiMultiple> exact_gamma_form(const Rational& x) {
  if (is_integer(x)) {
    if (x <= 0 || !x.get_num().fits_slong_p()) return std::nullopt;
    return SqrtPiMultiple{Rational(factorial(x.get_num().get_ui() - 1)), 0};
  }
  if (x.get_den() != 2) return std::nullopt;
  // Gamma(1/2) = sqrt(pi); walk up or down with Gamma(x + 1) = x Gamma(x).
  Rational c(1);
  Rational a = make_rational(1, 2);
  if (x > a) {
    for (; a < x; a += 1) c *= a;
  } else {
    for (; a > x; a -= 1) c /= (a - 1);
  }
  return SqrtPiMultiple{c, 1};
}

/// Gamma(x) on the Riemann sphere. Exact inputs are evaluated exactly at
/// positive integers; half-integers are materialized as floats from their
/// exact sqrt(pi) multiple; other exact inputs throw unsupported_exact_error.
/// `precision` is used only when an exact input needs a float result.
inline SphereValue gamma(const Scalar& x, long precision = kDefaultPrecision) {
  if (auto pole = as_nonpositive_integer(x)) return SphereValue::infinity(pole->tolerance_dependent);
  if (x.is_exact()) {
    auto form = exact_gamma_form(x.exact());
    if (!form)
      throw unsupported_exact_error("Gamma(" + x.to_string() +
                                    ") is not exactly representable; use gamma_ratio or float mode");
    if (form->sqrt_pi_power == 0) return SphereValue(Scalar(form->coefficient));
    return SphereValue(Scalar(Real(form->coefficient, precision) * sqrt(pi(precision))));
  }
  return SphereValue(Scalar(detail::float_gamma(x.complex())));
}

/// Float gamma regardless of the input mode.
inline SphereValue gamma_float(const Scalar& x, long precision = kDefaultPrecision) {
  long prec = x.is_exact() ? precision : x.precision();
  if (auto pole = as_nonpositive_integer(x)) return SphereValue::infinity(pole->tolerance_dependent);
  return SphereValue(Scalar(detail::float_gamma(x.to_complex(prec))));
}

/// Integer shifts up to this size are reduced to Pochhammer products in float
/// mode; larger shifts divide two gammas unless a pole forces the product.
inline constexpr long kMaxFloatPochhammerShift = 64;

/// Gamma(x) / Gamma(y). When x - y is an integer n the ratio is (y)_n, which
/// stays finite (and exact for exact inputs) even when both gammas are poles.
inline SphereValue gamma_ratio(const Scalar& x, const Scalar& y, long precision = kDefaultPrecision) {
  Scalar diff = x - y;
  auto x_pole = as_nonpositive_integer(x);
  auto y_pole = as_nonpositive_integer(y);
  if (auto n = as_integer(diff)) {
    bool tol = n->tolerance_dependent;
    if (diff.is_exact() || std::labs(n->value) <= kMaxFloatPochhammerShift || x_pole || y_pole)
      return pochhammer_sphere(y, n->value).mark_tolerance_dependent(tol);
  }
  if (x_pole && y_pole)
    throw indeterminate_error("Gamma(" + x.to_string() + ")/Gamma(" + y.to_string() +
                              "): both poles with non-integer difference");
  if (y_pole) return SphereValue(Scalar(0)).mark_tolerance_dependent(y_pole->tolerance_dependent);
  if (x_pole) return SphereValue::infinity(x_pole->tolerance_dependent);
  long prec = x.is_exact() ? (y.is_exact() ? precision : y.precision()) : x.precision();
  Complex gx = detail::float_gamma(x.to_complex(prec));
  Complex gy = detail::float_gamma(y.to_complex(prec));
  return SphereValue(Scalar(gx / gy));
}

}  // namespace hypersum
