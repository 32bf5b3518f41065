#pragma once

// Generalized hypergeometric series pFq(a; b; 1) at unit argument.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypersum/gamma.hpp"
#include "hypersum/levin.hpp"
#include "hypersum/pochhammer.hpp"
#include "hypersum/scalar.hpp"

namespace hypersum {

enum class SeriesKind { Terminating, Convergent, Divergent, Undefined };

inline const char* to_string(SeriesKind k) {
  switch (k) {
    case SeriesKind::Terminating: return "terminating";
    case SeriesKind::Convergent: return "convergent";
    case SeriesKind::Divergent: return "divergent";
    case SeriesKind::Undefined: return "undefined";
  }
  return "?";
}

struct SeriesClassification {
  SeriesKind kind = SeriesKind::Undefined;
  /// Index of the last nonzero term when kind == Terminating.
  long k = 0;
  bool saalschutzian = false;
  /// A float parameter was matched to an integer within kIntegerTolerance.
  bool tolerance_dependent = false;
};

/// Classifies raw parameter lists. Returns Undefined when a denominator
/// parameter -l is a nonpositive integer and the series does not terminate
/// at or before index l.
inline SeriesClassification classify(std::span<const Scalar> numerator,
                                     std::span<const Scalar> denominator,
                                     double abs_tol = EvalContext{}.abs_tol) {
  SeriesClassification c;
  std::optional<long> trunc;
  for (const Scalar& a : numerator) {
    if (auto m = as_nonpositive_integer(a)) {
      c.tolerance_dependent = c.tolerance_dependent || m->tolerance_dependent;
      if (!trunc || -m->value < *trunc) trunc = -m->value;
    }
  }
  for (const Scalar& b : denominator) {
    if (auto m = as_nonpositive_integer(b)) {
      c.tolerance_dependent = c.tolerance_dependent || m->tolerance_dependent;
      if (!trunc || *trunc > -m->value) {
        c.kind = SeriesKind::Undefined;
        return c;
      }
    }
  }

  const std::size_t p = numerator.size();
  const std::size_t q = denominator.size();
  if (p == q + 1) {
    Scalar excess(0);
    for (const Scalar& b : denominator) excess += b;
    for (const Scalar& a : numerator) excess -= a;
    Scalar off_by_one = excess - Scalar(1);
    c.saalschutzian = off_by_one.is_exact() ? off_by_one.is_zero() : off_by_one.abs_double() <= abs_tol;
    if (!trunc) {
      bool positive = excess.is_exact() ? excess.real_sign() > 0 : excess.real_double() > abs_tol;
      c.kind = positive ? SeriesKind::Convergent : SeriesKind::Divergent;
    }
  } else if (!trunc) {
    c.kind = p > q + 1 ? SeriesKind::Divergent : SeriesKind::Convergent;
  }
  if (trunc) {
    c.kind = SeriesKind::Terminating;
    c.k = *trunc;
  }
  return c;
}

/// Parameters of pFq at unit argument. The constructor rejects parameter
/// sets whose terms hit a zero denominator before the series terminates.
class HypParams {
 public:
  HypParams(std::vector<Scalar> numerator, std::vector<Scalar> denominator)
      : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
    long a = common_precision(numerator_), b = common_precision(denominator_);
    if (a != 0 && b != 0 && a != b) throw precision_mismatch("parameters carry different float precisions");
    if (hypersum::classify(numerator_, denominator_).kind == SeriesKind::Undefined)
      throw pole_error("denominator parameter is a nonpositive integer reached before termination");
  }

  const std::vector<Scalar>& numerator() const noexcept { return numerator_; }
  const std::vector<Scalar>& denominator() const noexcept { return denominator_; }
  std::size_t p() const noexcept { return numerator_.size(); }
  std::size_t q() const noexcept { return denominator_.size(); }

  bool is_exact() const {
    auto exact = [](const Scalar& s) { return s.is_exact(); };
    return std::all_of(numerator_.begin(), numerator_.end(), exact) &&
           std::all_of(denominator_.begin(), denominator_.end(), exact);
  }
  /// Float precision carried by the parameters, 0 when all are exact.
  long precision() const {
    long a = common_precision(numerator_);
    return a != 0 ? a : common_precision(denominator_);
  }

  SeriesClassification classify(const EvalContext& ctx = {}) const {
    return hypersum::classify(numerator_, denominator_, ctx.abs_tol);
  }

  std::string to_string() const {
    std::string s = std::to_string(p()) + "F" + std::to_string(q()) + "(";
    for (std::size_t i = 0; i < p(); ++i) s += (i ? ", " : "") + numerator_[i].to_string();
    s += "; ";
    for (std::size_t i = 0; i < q(); ++i) s += (i ? ", " : "") + denominator_[i].to_string();
    return s + "; 1)";
  }

 private:
  std::vector<Scalar> numerator_;
  std::vector<Scalar> denominator_;
};

inline SeriesClassification classify(const HypParams& params, const EvalContext& ctx = {}) {
  return params.classify(ctx);
}

/// Truncation error estimate. Exact terminating sums carry an exact zero.
struct TailBound {
  bool exact_zero = true;
  double value = 0.0;

  static TailBound zero() { return {}; }
  static TailBound of(double v) { return TailBound{false, v}; }
};

enum class SummationMethod { Exact, FiniteFloat, Direct, Levin };

inline const char* to_string(SummationMethod m) {
  switch (m) {
    case SummationMethod::Exact: return "exact";
    case SummationMethod::FiniteFloat: return "finite-float";
    case SummationMethod::Direct: return "direct";
    case SummationMethod::Levin: return "levin-u";
  }
  return "?";
}

struct EvalResult {
  SphereValue value;
  std::size_t terms_used = 0;
  TailBound tail_bound;
  SeriesClassification classification;
  SummationMethod method = SummationMethod::Exact;
  /// Set for evaluations outside the range where a closed form is known to
  /// hold (nonterminating Ramanujan sums at z != 0).
  bool experimental = false;
};

/// (a_1)_j...(a_p)_j / ((b_1)_j...(b_q)_j j!), computed from the Pochhammer
/// products directly rather than the term recurrence.
inline Scalar term(const HypParams& params, long j) {
  if (j < 0) throw domain_error("term index must be nonnegative");
  Scalar num(1), den(Rational(factorial(static_cast<unsigned long>(j))));
  for (const Scalar& a : params.numerator()) num *= pochhammer(a, j);
  for (const Scalar& b : params.denominator()) den *= pochhammer(b, j);
  if (den.is_zero() || (!den.is_exact() && den.abs_double() == 0.0))
    throw pole_error("denominator Pochhammer vanishes at term " + std::to_string(j), j);
  return num / den;
}

namespace detail {

/// Levin is attempted at these term counts when direct summation is
/// projected to need more than max_terms.
inline bool is_checkpoint(std::size_t count) {
  return count >= 64 && (count & (count - 1)) == 0;
}

inline constexpr std::size_t kLevinMaxOrder = 60;
inline constexpr std::size_t kStoredTerms = 1u << 14;

/// Sums an infinite series whose j-th term is produced by `next(j)`.
/// `sigma` is the known algebraic decay excess Re(sum b - sum a) for p = q+1
/// hypergeometric series (terms ~ j^(-1-sigma)); when empty and
/// `algebraic` is set it is estimated from the term ratio.
template <class NextTerm>
EvalResult sum_series(NextTerm&& next, bool algebraic, std::optional<double> sigma,
                      const SeriesClassification& cls, const EvalContext& ctx) {
  const long prec = ctx.precision;
  std::vector<Complex> stored;
  Complex sum(prec);
  double prev_abs = 0.0;
  std::size_t run = 0;

  auto try_levin = [&](std::size_t start) -> std::optional<EvalResult> {
    if (!ctx.accelerate || stored.size() < start + 8) return std::nullopt;
    auto est = levin_u_sum<Complex>(std::span<const Complex>(stored), start, kLevinMaxOrder,
                                    ctx.rel_tol, ctx.abs_tol);
    if (!est) return std::nullopt;
    EvalResult r{SphereValue(Scalar(est->value)), start + est->order, TailBound::of(est->error_estimate),
                 cls, SummationMethod::Levin};
    return r;
  };

  for (std::size_t j = 0; j < ctx.max_terms; ++j) {
    Complex t = next(j);
    if (!t.is_finite()) throw pole_error("non-finite term at index " + std::to_string(j), static_cast<long>(j));
    sum += t;
    if (stored.size() < kStoredTerms) stored.push_back(t);
    const double t_abs = abs(t).to_double();
    if (j == 0) {
      prev_abs = t_abs;
      continue;
    }
    const double r = prev_abs > 0 ? t_abs / prev_abs : 0.0;
    prev_abs = t_abs;
    run = (r < 1.0) ? run + 1 : 0;
    if (t_abs == 0.0 && run >= 1) {
      // Underflow or an exact zero tail; nothing more to add.
      return EvalResult{SphereValue(Scalar(sum)), j + 1, TailBound::of(0.0), cls, SummationMethod::Direct};
    }
    if (run < 3) continue;

    const double target = std::max(ctx.rel_tol * abs(sum).to_double(), ctx.abs_tol);
    double tail = t_abs * r / (1.0 - r);
    double sig = std::numeric_limits<double>::quiet_NaN();
    if (algebraic) {
      sig = sigma ? *sigma : static_cast<double>(j) * (1.0 - r) - 1.0;
      tail = sig > 0 ? std::max(tail, t_abs * static_cast<double>(j) / sig)
                     : std::numeric_limits<double>::infinity();
    }
    if (tail <= target)
      return EvalResult{SphereValue(Scalar(sum)), j + 1, TailBound::of(tail), cls, SummationMethod::Direct};

    if (is_checkpoint(j + 1) && algebraic) {
      double projected = sig > 0 ? static_cast<double>(j) * std::pow(tail / target, 1.0 / sig)
                                 : std::numeric_limits<double>::infinity();
      if (projected > static_cast<double>(ctx.max_terms)) {
        if (auto r_levin = try_levin(j + 1 - run)) return *r_levin;
        if (auto r_levin = try_levin(0)) return *r_levin;
      }
    }
  }
  if (algebraic) {
    if (auto r_levin = try_levin(0)) return *r_levin;
  }
  throw no_convergence_error("series did not reach tolerance within max_terms = " +
                                 std::to_string(ctx.max_terms),
                             Scalar(sum).to_decimal(), ctx.max_terms);
}

}  // namespace detail

/// pFq(a; b; 1). Terminating series are summed exactly when every parameter
/// is exact; convergent series are summed in floating point at
/// ctx.precision. Divergent and undefined series are refused.
inline EvalResult eval_at_1(const HypParams& params, const EvalContext& ctx = {}) {
  ctx.validate();
  const SeriesClassification cls = params.classify(ctx);
  if (cls.kind == SeriesKind::Divergent || cls.kind == SeriesKind::Undefined)
    throw divergent_error(params.to_string() + " is " + to_string(cls.kind) + " at unit argument");

  if (cls.kind == SeriesKind::Terminating) {
    // Recurrence t_{j+1} = t_j * prod(a + j) / (prod(b + j) (j + 1)).
    const bool exact = params.is_exact();
    auto run = [&](auto&& convert) {
      auto t = convert(Scalar(1));
      auto sum = t;
      for (long j = 0; j < cls.k; ++j) {
        auto num = convert(Scalar(1));
        auto den = convert(Scalar(j + 1));
        for (const Scalar& a : params.numerator()) num = num * convert(a + Scalar(j));
        for (const Scalar& b : params.denominator()) den = den * convert(b + Scalar(j));
        if (den == convert(Scalar(0)))
          throw pole_error("zero denominator at term " + std::to_string(j + 1), j + 1);
        t = t * num / den;
        sum = sum + t;
      }
      return sum;
    };
    if (exact) {
      Rational s = run([](const Scalar& x) { return x.exact(); });
      return EvalResult{SphereValue(Scalar(std::move(s))), static_cast<std::size_t>(cls.k + 1),
                        TailBound::zero(), cls, SummationMethod::Exact};
    }
    Complex s = run([&](const Scalar& x) { return x.to_complex(ctx.precision); });
    return EvalResult{SphereValue(Scalar(std::move(s))), static_cast<std::size_t>(cls.k + 1),
                      TailBound::of(0.0), cls, SummationMethod::FiniteFloat};
  }

  std::vector<Complex> num, den;
  for (const Scalar& a : params.numerator()) num.push_back(a.to_complex(ctx.precision));
  for (const Scalar& b : params.denominator()) den.push_back(b.to_complex(ctx.precision));
  const bool algebraic = params.p() == params.q() + 1;
  std::optional<double> sigma;
  if (algebraic) {
    Scalar excess(0);
    for (const Scalar& b : params.denominator()) excess += b;
    for (const Scalar& a : params.numerator()) excess -= a;
    sigma = excess.real_double();
  }
  Complex t(Real(1.0, ctx.precision));
  auto next = [&](std::size_t j) {
    if (j == 0) return t;
    const long i = static_cast<long>(j) - 1;
    Complex ratio(Real(1.0, ctx.precision));
    for (const Complex& a : num) ratio *= a + i;
    Complex d(Real(static_cast<double>(j), ctx.precision));
    for (const Complex& b : den) d *= b + i;
    t = t * ratio / d;
    return t;
  };
  return detail::sum_series(next, algebraic, sigma, cls, ctx);
}

}  // namespace hypersum
