#pragma once

#include "hypersum/scalar.hpp"

namespace hypersum {

namespace detail {

inline bool is_zero_factor(const Scalar& f) {
  if (f.is_exact()) return f.is_zero();
  auto m = as_integer(f);
  return m && m->value == 0;
}

}  // namespace detail

/// Rising factorial (a)_j = Gamma(a + j) / Gamma(a) on the Riemann sphere.
/// Negative indices use (a)_{-n} = 1 / (a - n)_n, which is infinite when the
/// product contains a zero factor.
inline SphereValue pochhammer_sphere(const Scalar& a, long j) {
  if (j >= 0) {
    Scalar p(1);
    Scalar f = a;
    for (long i = 0; i < j; ++i) {
      p *= f;
      f += Scalar(1);
    }
    return SphereValue(std::move(p));
  }
  const long n = -j;
  Scalar p(1);
  Scalar f = a - Scalar(n);
  for (long i = 0; i < n; ++i) {
    if (detail::is_zero_factor(f)) return SphereValue::infinity(!f.is_exact());
    p *= f;
    f += Scalar(1);
  }
  return SphereValue(Scalar(1) / p);
}

/// Finite Pochhammer symbol; throws pole_error where pochhammer_sphere would
/// return infinity.
inline Scalar pochhammer(const Scalar& a, long j) {
  SphereValue v = pochhammer_sphere(a, j);
  if (v.is_infinity())
    throw pole_error("Pochhammer symbol (" + a.to_string() + ")_" + std::to_string(j) +
                     " has a zero factor in its denominator");
  return v.value();
}

}  // namespace hypersum
