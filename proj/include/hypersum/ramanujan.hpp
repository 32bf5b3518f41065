#pragma once

// Ramanujan's sum
//
//   S(alpha, beta, m, z) = m * sum_j Gamma(beta+1+jz) Gamma(m+j(z+1))
//                          / (Gamma(alpha+beta+1+j(z+1)) Gamma(m+jz+1)) * (alpha)_j / j!
//
// in its series, integer-z hypergeometric, recast 2n+2F2n+1, polynomial and
// closed forms, together with the finite sums that appear when proving that
// S equals Gamma(beta+1-m) / Gamma(alpha+beta+1-m) for alpha = -k.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypersum/gamma.hpp"
#include "hypersum/hyper_series.hpp"
#include "hypersum/pochhammer.hpp"
#include "hypersum/polynomial.hpp"

namespace hypersum {

struct RamanujanParams {
  Scalar alpha;
  Scalar beta;
  Scalar m;
  Scalar z;

  RamanujanParams(Scalar alpha_, Scalar beta_, Scalar m_, Scalar z_)
      : alpha(std::move(alpha_)), beta(std::move(beta_)), m(std::move(m_)), z(std::move(z_)) {
    auto t = as_nonpositive_integer(alpha);
    if (t) k_ = -t->value;
  }

  /// alpha = -k.
  static RamanujanParams terminating(long k, Scalar beta, Scalar m, Scalar z) {
    if (k < 0) throw domain_error("k must be nonnegative");
    return RamanujanParams(Scalar(-k), std::move(beta), std::move(m), std::move(z));
  }

  /// k when alpha is the nonpositive integer -k.
  std::optional<long> terminating_k() const noexcept { return k_; }

  bool is_exact() const {
    return alpha.is_exact() && beta.is_exact() && m.is_exact() && z.is_exact();
  }

 private:
  std::optional<long> k_;
};

using PolynomialInZ = Polynomial<Scalar>;

/// Gamma(beta+1-m) / Gamma(alpha+beta+1-m); (beta+1-m-k)_k when alpha = -k.
inline SphereValue s_closed_form(const RamanujanParams& p, long precision = kDefaultPrecision) {
  const Scalar top = p.beta + Scalar(1) - p.m;
  return gamma_ratio(top, p.alpha + top, precision);
}

namespace detail {

inline long working_precision(const RamanujanParams& p, const EvalContext& ctx) {
  std::vector<Scalar> all{p.alpha, p.beta, p.m, p.z};
  long prec = common_precision(all);
  if (prec != 0 && prec != ctx.precision)
    throw precision_mismatch("parameters carry " + std::to_string(prec) + " bits but the context asks for " +
                             std::to_string(ctx.precision));
  return ctx.precision;
}

/// j-th term of S as the product of two gamma ratios. The j = 0 factor
/// m * Gamma(m)/Gamma(m+1) is taken as 1 so that m = 0 never forms 0 * inf.
inline Scalar s_term(const RamanujanParams& p, long j, const Scalar& coeff, long precision) {
  const Scalar jz = Scalar(j) * p.z;
  const Scalar one(1);
  SphereValue first = gamma_ratio(p.beta + one + jz, p.alpha + p.beta + one + jz + Scalar(j), precision);
  if (first.is_infinity())
    throw pole_error("term " + std::to_string(j) + ": Gamma(beta+1+jz) has a non-cancelling pole", j);
  Scalar second(1);
  if (j > 0) {
    SphereValue r = gamma_ratio(p.m + jz + Scalar(j), p.m + jz + one, precision);
    if (r.is_infinity())
      throw pole_error("term " + std::to_string(j) + ": Gamma(m+j(z+1)) has a non-cancelling pole", j);
    second = p.m * r.value();
  }
  return first.value() * second * coeff;
}

}  // namespace detail

/// Sums the defining series of S term by term. For alpha = -k the sum is
/// finite and exact whenever every parameter is exact. Nonterminating sums
/// are evaluated in floating point; for z != 0 they are flagged experimental.
inline EvalResult s_direct(const RamanujanParams& p, const EvalContext& ctx = {}) {
  ctx.validate();
  const long prec = detail::working_precision(p, ctx);
  if (auto k = p.terminating_k()) {
    SeriesClassification cls{SeriesKind::Terminating, *k, false, !p.alpha.is_exact()};
    Scalar sum(0);
    Scalar coeff(1);  // (alpha)_j / j!
    for (long j = 0; j <= *k; ++j) {
      if (j > 0) coeff = coeff * (p.alpha + Scalar(j - 1)) / Scalar(j);
      sum += detail::s_term(p, j, coeff, prec);
    }
    const bool exact = sum.is_exact();
    return EvalResult{SphereValue(std::move(sum)), static_cast<std::size_t>(*k + 1),
                      exact ? TailBound::zero() : TailBound::of(0.0), cls,
                      exact ? SummationMethod::Exact : SummationMethod::FiniteFloat};
  }

  // Terms decay like j^(-1-sigma) with sigma = Re(beta+1-m) at z = 0 and
  // sigma = 1 for Re(z) > 0; elsewhere the decay is estimated on the fly.
  std::optional<double> sigma;
  const bool z_zero = p.z.is_zero();
  if (z_zero) sigma = (p.beta + Scalar(1) - p.m).real_double();
  else if (p.z.real_double() > 0) sigma = 1.0;
  SeriesClassification cls{sigma && *sigma <= 0 ? SeriesKind::Divergent : SeriesKind::Convergent, 0, false,
                           false};
  if (cls.kind == SeriesKind::Divergent)
    throw divergent_error("S(z) series diverges: Re(beta+1-m) <= 0 at z = 0");
  Scalar coeff(1);
  auto next = [&](std::size_t j) {
    const long jj = static_cast<long>(j);
    if (jj > 0) coeff = coeff * (p.alpha + Scalar(jj - 1)) / Scalar(jj);
    return detail::s_term(p, jj, coeff, prec).to_complex(prec);
  };
  EvalResult r = detail::sum_series(next, true, sigma, cls, ctx);
  r.experimental = !z_zero;
  return r;
}

namespace detail {

inline long nonnegative_integer_z(const RamanujanParams& p) {
  auto n = as_integer(p.z);
  if (!n || n->value < 0) throw domain_error("integer form needs z to be a nonnegative integer");
  return n->value;
}

}  // namespace detail

/// S(n) = Gamma(beta+1)/Gamma(alpha+beta+1) *
///        sum_j (beta+1)_{nj} (m)_{(n+1)j} (alpha)_j / ((alpha+beta+1)_{(n+1)j} (m+1)_{nj} j!).
inline EvalResult s_integer_form(const RamanujanParams& p, const EvalContext& ctx = {}) {
  ctx.validate();
  const long prec = detail::working_precision(p, ctx);
  const long n = detail::nonnegative_integer_z(p);
  const Scalar one(1);
  const Scalar b1 = p.beta + one;
  const Scalar ab1 = p.alpha + p.beta + one;
  SphereValue prefactor = gamma_ratio(b1, ab1, prec);

  if (auto k = p.terminating_k()) {
    Scalar sum(0);
    for (long j = 0; j <= *k; ++j) {
      Scalar num = pochhammer(b1, n * j) * pochhammer(p.m, (n + 1) * j) * pochhammer(p.alpha, j);
      Scalar den = pochhammer(ab1, (n + 1) * j) * pochhammer(p.m + one, n * j) *
                   Scalar(Rational(factorial(static_cast<unsigned long>(j))));
      if (den.is_zero())
        throw pole_error("integer form: denominator Pochhammer vanishes at term " + std::to_string(j), j);
      sum += num / den;
    }
    SeriesClassification cls{SeriesKind::Terminating, *k, false, !p.alpha.is_exact()};
    const bool exact = sum.is_exact() && prefactor.is_finite() && prefactor.value().is_exact();
    return EvalResult{prefactor * SphereValue(std::move(sum)), static_cast<std::size_t>(*k + 1),
                      exact ? TailBound::zero() : TailBound::of(0.0), cls,
                      exact ? SummationMethod::Exact : SummationMethod::FiniteFloat};
  }

  const double sigma = n == 0 ? (p.beta + one - p.m).real_double() : 1.0;
  SeriesClassification cls{SeriesKind::Convergent, 0, n > 0, false};
  if (n == 0) {
    const Scalar excess = p.beta + one - p.m;
    const bool converges = excess.is_exact() ? excess.real_sign() > 0 : excess.real_double() > ctx.abs_tol;
    if (!converges) {
      cls.kind = SeriesKind::Divergent;
      throw divergent_error("integer form at z = 0 needs Re(beta+1-m) > 0");
    }
  }
  const Complex a = p.alpha.to_complex(prec);
  const Complex bp1 = b1.to_complex(prec);
  const Complex mm = p.m.to_complex(prec);
  const Complex abp1 = ab1.to_complex(prec);
  Complex t(Real(1.0, prec));
  auto next = [&](std::size_t jj) {
    if (jj == 0) return t;
    const long j = static_cast<long>(jj) - 1;  // ratio t_{j+1} / t_j
    Complex num = a + j;
    Complex den(Real(static_cast<double>(j + 1), prec));
    for (long i = 0; i < n; ++i) num *= bp1 + (n * j + i);
    for (long i = 0; i <= n; ++i) num *= mm + ((n + 1) * j + i);
    for (long i = 0; i <= n; ++i) den *= abp1 + ((n + 1) * j + i);
    for (long i = 0; i < n; ++i) den *= mm + (n * j + i + 1);
    t = t * num / den;
    return t;
  };
  EvalResult r = detail::sum_series(next, true, sigma, cls, ctx);
  r.value = prefactor * r.value;
  return r;
}

struct RecastForm {
  HypParams params;
  /// Gamma(beta+1) / Gamma(alpha+beta+1)
  SphereValue prefactor;
};

/// Splits each Pochhammer of the integer form with the multiplication
/// formula, giving a 2n+2F2n+1 at unit argument:
///   numerators   (beta+i)/n, i=1..n;  (m+i)/(n+1), i=0..n;  alpha
///   denominators (m+i)/n,    i=1..n;  (alpha+beta+i)/(n+1), i=1..n+1
inline RecastForm recast_params(const Scalar& alpha, const Scalar& beta, const Scalar& m, long n,
                                long precision = kDefaultPrecision) {
  if (n < 1) throw domain_error("recast form needs n >= 1");
  std::vector<Scalar> num, den;
  const Scalar nn(n), n1(n + 1);
  for (long i = 1; i <= n; ++i) num.push_back((beta + Scalar(i)) / nn);
  for (long i = 0; i <= n; ++i) num.push_back((m + Scalar(i)) / n1);
  num.push_back(alpha);
  for (long i = 1; i <= n; ++i) den.push_back((m + Scalar(i)) / nn);
  for (long i = 1; i <= n + 1; ++i) den.push_back((alpha + beta + Scalar(i)) / n1);
  SphereValue prefactor = gamma_ratio(beta + Scalar(1), alpha + beta + Scalar(1), precision);
  return RecastForm{HypParams(std::move(num), std::move(den)), std::move(prefactor)};
}

/// Expands S(-k, beta, m, z) as a polynomial in z:
///   m * sum_{j=0..k} (-k+beta+1+j(z+1))_{k-j} (m+jz+1)_{j-1} (-k)_j / j!
/// The j = 0 term's m * (m+1)_{-1} = m/m is cancelled symbolically.
inline PolynomialInZ s_polynomial(long k, const Scalar& beta, const Scalar& m) {
  if (k < 0) throw domain_error("k must be nonnegative");
  PolynomialInZ total = PolynomialInZ::constant(Scalar(0));
  const Scalar one(1);
  for (long j = 0; j <= k; ++j) {
    // (-k)_j / j! = (-1)^j C(k, j)
    Integer c = binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(j));
    if (j % 2 == 1) c = -c;
    PolynomialInZ term = PolynomialInZ::constant(Scalar(Rational(c)));
    for (long i = 0; i < k - j; ++i)
      term = term * PolynomialInZ::linear(Scalar(-k + j + i) + beta + one, Scalar(j));
    if (j > 0) {
      term = term * m;
      for (long i = 0; i < j - 1; ++i) term = term * PolynomialInZ::linear(m + Scalar(1 + i), Scalar(j));
    }
    total = total + term;
  }
  return total;
}

/// E = sum_{j=0..r} (m+r)_{nj} / (m+1)_{nj} (-1)^j C(r, j).
inline Scalar inner_sum_E(const Scalar& m, long n, long r) {
  if (n < 1) throw domain_error("inner sum needs n >= 1");
  if (r < 0) throw domain_error("inner sum needs r >= 0");
  Scalar ratio(1);
  Scalar sum(1);
  for (long j = 1; j <= r; ++j) {
    for (long i = n * (j - 1); i < n * j; ++i) {
      const Scalar den = m + Scalar(1 + i);
      if (detail::is_zero_factor(den))
        throw pole_error("inner sum: (m+1)_{nj} vanishes at j = " + std::to_string(j), j);
      ratio = ratio * (m + Scalar(r + i)) / den;
    }
    Integer c = binomial(static_cast<unsigned long>(r), static_cast<unsigned long>(j));
    if (j % 2 == 1) c = -c;
    sum += ratio * Scalar(Rational(c));
  }
  return sum;
}

/// D^{r-1} [x^{m+r-1} (1 - x^n)^r] at x = 1 via the Leibniz rule, with the
/// derivatives of (1 - x^n)^r taken from its binomial expansion.
inline Scalar finite_difference_check(const Scalar& m, long n, long r) {
  if (n < 1 || r < 1) throw domain_error("finite difference check needs n >= 1 and r >= 1");
  const long order = r - 1;
  // g^{(i)}(1) = sum_s (-1)^s C(r, s) (ns)(ns-1)...(ns-i+1)
  std::vector<Integer> g(static_cast<std::size_t>(order + 1));
  for (long i = 0; i <= order; ++i) {
    Integer acc = 0;
    for (long s = 0; s <= r; ++s) {
      Integer falling = 1;
      for (long t = 0; t < i; ++t) falling *= n * s - t;
      Integer c = binomial(static_cast<unsigned long>(r), static_cast<unsigned long>(s));
      acc += (s % 2 == 0 ? c : Integer(-c)) * falling;
    }
    g[static_cast<std::size_t>(i)] = acc;
  }
  Scalar total(0);
  const Scalar top = m + Scalar(r - 1);
  for (long i = 0; i <= order; ++i) {
    // f^{(order-i)}(1) for f = x^{m+r-1}
    Scalar f(1);
    for (long t = 0; t < order - i; ++t) f = f * (top - Scalar(t));
    Integer c = binomial(static_cast<unsigned long>(order), static_cast<unsigned long>(i));
    total += f * Scalar(Rational(c * g[static_cast<std::size_t>(i)]));
  }
  return total;
}

struct ReflectedPrefactor {
  /// Gamma(m-beta) Gamma(-alpha-beta) / (Gamma(-beta) Gamma(m-alpha-beta))
  SphereValue reflected;
  /// Gamma(beta+1) Gamma(alpha+beta+1-m) / (Gamma(alpha+beta+1) Gamma(beta+1-m))
  SphereValue original;
  /// sin(pi(beta+1)) sin(pi(alpha+beta+1-m)) / (sin(pi(alpha+beta+1)) sin(pi(beta+1-m))),
  /// empty when a sine vanishes.
  std::optional<Scalar> sine_quotient;
  bool consistent = false;
};

/// Reflection-formula rewrite of the prefactor for integer alpha, checked
/// against the unreflected gamma quotient.
inline ReflectedPrefactor reflected_prefactor(const Scalar& alpha, const Scalar& beta, const Scalar& m,
                                  const EvalContext& ctx = {}) {
  if (!as_integer(alpha)) throw domain_error("reflected prefactor needs an integer alpha");
  const long prec = ctx.precision;
  const Scalar one(1);
  ReflectedPrefactor out{gamma_ratio(m - beta, m - alpha - beta, prec) * gamma_ratio(-alpha - beta, -beta, prec),
                   gamma_ratio(beta + one, alpha + beta + one, prec) *
                       gamma_ratio(alpha + beta + one - m, beta + one - m, prec),
                   std::nullopt, false};

  auto sin_pi = [&](const Scalar& x) { return sin(x.to_complex(prec) * pi(prec)); };
  Complex s_den = sin_pi(alpha + beta + one) * sin_pi(beta + one - m);
  if (abs(s_den).to_double() > 1e-30)
    out.sine_quotient = Scalar(sin_pi(beta + one) * sin_pi(alpha + beta + one - m) / s_den);

  if (out.reflected.is_infinity() || out.original.is_infinity()) {
    out.consistent = out.reflected.is_infinity() && out.original.is_infinity();
  } else {
    const Scalar& a = out.reflected.value();
    const Scalar& b = out.original.value();
    if (a.is_exact() && b.is_exact()) {
      out.consistent = a == b;
    } else {
      const Complex d = a.to_complex(prec) - b.to_complex(prec);
      const double scale = std::max(a.abs_double(), b.abs_double());
      out.consistent = abs(d).to_double() <= std::max(ctx.rel_tol * scale, ctx.abs_tol);
    }
  }
  return out;
}

}  // namespace hypersum
