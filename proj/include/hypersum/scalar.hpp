#pragma once

// Scalar values: exact rationals or complex floats at a fixed binary
// precision, plus the Riemann-sphere extension used for gamma poles.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "hypersum/complex.hpp"
#include "hypersum/error.hpp"
#include "hypersum/rational.hpp"

namespace hypersum {

enum class Mode { Exact, Float };

inline const char* to_string(Mode m) { return m == Mode::Exact ? "exact" : "float"; }

/// Float values closer than this to an integer are treated as that integer
/// when deciding poles and Pochhammer reductions.
inline constexpr double kIntegerTolerance = 1e-12;

struct EvalContext {
  long precision = 256;
  std::size_t max_terms = 100000;
  double rel_tol = 1e-12;
  double abs_tol = 1e-30;
  /// Allow Levin-type acceleration for algebraically convergent series
  /// whose direct summation would exhaust max_terms.
  bool accelerate = true;

  void validate() const {
    if (precision < kMinPrecision) throw domain_error("precision must be >= 53 bits");
    if (max_terms < 1) throw domain_error("max_terms must be >= 1");
    if (!(rel_tol > 0) || !(abs_tol > 0)) throw domain_error("tolerances must be positive");
  }
};

class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  Scalar(int n) : v_(Rational(n)) {}
  Scalar(long n) : v_(Rational(n)) {}
  Scalar(Rational q) : v_(std::move(q)) { std::get<Rational>(v_).canonicalize(); }
  Scalar(Complex z) : v_(std::move(z)) {}
  explicit Scalar(Real r) : v_(Complex(std::move(r))) {}

  static Scalar ratio(long num, long den) { return Scalar(make_rational(num, den)); }

  Mode mode() const noexcept { return v_.index() == 0 ? Mode::Exact : Mode::Float; }
  bool is_exact() const noexcept { return v_.index() == 0; }
  /// 0 for exact values.
  long precision() const noexcept { return is_exact() ? 0 : std::get<Complex>(v_).precision(); }

  const Rational& exact() const {
    if (!is_exact()) throw domain_error("value is not an exact rational");
    return std::get<Rational>(v_);
  }
  const Complex& complex() const {
    if (is_exact()) throw domain_error("value is not a float");
    return std::get<Complex>(v_);
  }
  /// Float image at the given precision. A float value must already carry
  /// that precision.
  Complex to_complex(long precision) const {
    if (is_exact()) return Complex(Real(std::get<Rational>(v_), precision));
    const Complex& z = std::get<Complex>(v_);
    if (z.precision() != precision)
      throw precision_mismatch("float scalar at " + std::to_string(z.precision()) +
                               " bits used in a " + std::to_string(precision) + "-bit context");
    return z;
  }
  Scalar to_float(long precision) const { return Scalar(to_complex(precision)); }

  bool is_zero() const {
    return is_exact() ? std::get<Rational>(v_) == 0 : std::get<Complex>(v_).is_zero();
  }
  bool is_real() const { return is_exact() || std::get<Complex>(v_).is_real(); }
  /// Real part as a double; for magnitude checks only.
  double real_double() const {
    return is_exact() ? std::get<Rational>(v_).get_d() : std::get<Complex>(v_).re.to_double();
  }
  double abs_double() const {
    return is_exact() ? Rational(abs(std::get<Rational>(v_))).get_d() : abs(std::get<Complex>(v_)).to_double();
  }
  /// Sign of the real part (exact for rationals).
  int real_sign() const {
    return is_exact() ? sgn(std::get<Rational>(v_)) : std::get<Complex>(v_).re.sign();
  }

  /// Exact values print as canonical "p/q"; floats with round-trip digits.
  std::string to_string() const {
    return is_exact() ? hypersum::to_string(std::get<Rational>(v_)) : std::get<Complex>(v_).to_string();
  }
  /// Decimal rendering; exact values are rounded to `digits` significant digits.
  std::string to_decimal(int digits = 20) const {
    if (is_exact()) return Real(std::get<Rational>(v_), 256).to_string(digits);
    return std::get<Complex>(v_).to_string(digits);
  }

  Scalar operator-() const {
    if (is_exact()) return Scalar(Rational(-std::get<Rational>(v_)));
    return Scalar(-std::get<Complex>(v_));
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x + y; });
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x - y; });
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x * y; });
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw pole_error("division by zero");
    return combine(a, b, [](const auto& x, const auto& y) { return x / y; });
  }
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  /// Literal equality: exact values compare as rationals, floats bitwise.
  /// Mixed modes never compare equal.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.mode() != b.mode()) return false;
    if (a.is_exact()) return std::get<Rational>(a.v_) == std::get<Rational>(b.v_);
    return std::get<Complex>(a.v_) == std::get<Complex>(b.v_);
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  template <class Op>
  static Scalar combine(const Scalar& a, const Scalar& b, Op op) {
    if (a.is_exact() && b.is_exact()) {
      Rational r = op(std::get<Rational>(a.v_), std::get<Rational>(b.v_));
      return Scalar(std::move(r));
    }
    long prec = a.is_exact() ? b.precision() : a.precision();
    return Scalar(Complex(op(a.to_complex(prec), b.to_complex(prec))));
  }

  std::variant<Rational, Complex> v_;
};

/// Result of asking whether a scalar is an integer.
struct IntegerMatch {
  long value;
  /// True when the decision relied on kIntegerTolerance (float input).
  bool tolerance_dependent;
};

inline std::optional<IntegerMatch> as_integer(const Scalar& x) {
  if (x.is_exact()) {
    const Rational& q = x.exact();
    if (!is_integer(q) || !q.get_num().fits_slong_p()) return std::nullopt;
    return IntegerMatch{q.get_num().get_si(), false};
  }
  const Complex& z = x.complex();
  if (abs(z.im).to_double() > kIntegerTolerance) return std::nullopt;
  Real nearest = round_to_integer(z.re);
  if (abs(z.re - nearest).to_double() > kIntegerTolerance) return std::nullopt;
  if (abs(nearest).to_double() > 9.0e18) return std::nullopt;
  return IntegerMatch{to_long(nearest), true};
}

/// Nonpositive integer test, the pole set of the gamma function.
inline std::optional<IntegerMatch> as_nonpositive_integer(const Scalar& x) {
  auto m = as_integer(x);
  if (m && m->value <= 0) return m;
  return std::nullopt;
}

/// Common float precision of a set of scalars, or 0 when all are exact.
/// Throws precision_mismatch on mixed float precisions.
template <class Range>
long common_precision(const Range& values) {
  long prec = 0;
  for (const Scalar& v : values) {
    if (v.is_exact()) continue;
    if (prec != 0 && prec != v.precision())
      throw precision_mismatch("parameters carry different float precisions");
    prec = v.precision();
  }
  return prec;
}

/// Element of the Riemann sphere: a finite Scalar or the single point at
/// infinity.
class SphereValue {
 public:
  SphereValue(Scalar v) : finite_(std::move(v)) {}
  SphereValue(int v) : finite_(Scalar(v)) {}
  static SphereValue infinity(bool tolerance_dependent = false) {
    SphereValue s;
    s.tolerance_dependent_ = tolerance_dependent;
    return s;
  }

  bool is_infinity() const noexcept { return !finite_.has_value(); }
  bool is_finite() const noexcept { return finite_.has_value(); }
  /// Throws pole_error at infinity.
  const Scalar& value() const {
    if (!finite_) throw pole_error("value is the point at infinity");
    return *finite_;
  }
  const std::optional<Scalar>& finite() const noexcept { return finite_; }

  /// Set when a pole (or the absence of one) was decided with a float
  /// integer tolerance.
  bool tolerance_dependent() const noexcept { return tolerance_dependent_; }
  SphereValue& mark_tolerance_dependent(bool flag = true) {
    tolerance_dependent_ = tolerance_dependent_ || flag;
    return *this;
  }

  SphereValue reciprocal() const {
    if (!finite_) return SphereValue(Scalar(0)).mark_tolerance_dependent(tolerance_dependent_);
    if (finite_->is_zero()) return infinity(tolerance_dependent_);
    return SphereValue(Scalar(1) / *finite_).mark_tolerance_dependent(tolerance_dependent_);
  }

  /// 0 * infinity is indeterminate.
  friend SphereValue operator*(const SphereValue& a, const SphereValue& b) {
    bool tol = a.tolerance_dependent_ || b.tolerance_dependent_;
    if (a.is_finite() && b.is_finite()) return SphereValue(*a.finite_ * *b.finite_).mark_tolerance_dependent(tol);
    const SphereValue& other = a.is_infinity() ? b : a;
    if (other.is_finite() && other.finite_->is_zero())
      throw indeterminate_error("0 * infinity");
    return infinity(tol);
  }
  friend SphereValue operator/(const SphereValue& a, const SphereValue& b) {
    return a * b.reciprocal();
  }

  std::string to_string() const { return finite_ ? finite_->to_string() : "inf"; }

 private:
  SphereValue() = default;
  std::optional<Scalar> finite_;
  bool tolerance_dependent_ = false;
};

/// Parses a scalar literal: "p/q", a decimal, or (float mode only) a complex
/// literal such as "1+i", "0.5-2i", "i". Exact mode keeps decimals exact.
inline Scalar parse_scalar(std::string_view text, Mode mode, long precision = 256) {
  if (text.empty()) throw parse_error("empty value", 0);
  if (text.back() == 'i') {
    if (mode == Mode::Exact) throw parse_error("complex values require float mode", text.size() - 1);
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = text.size() - 1; i > 0; --i) {
      if ((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
        split = i;
        break;
      }
    }
    std::string_view re_part = split == std::string_view::npos ? std::string_view{} : text.substr(0, split);
    std::string im_part(split == std::string_view::npos ? text.substr(0, text.size() - 1)
                                                        : text.substr(split, text.size() - 1 - split));
    if (im_part.empty() || im_part == "+" || im_part == "-") im_part += "1";
    std::size_t im_offset = split == std::string_view::npos ? 0 : split;
    Complex z(precision);
    try {
      if (!re_part.empty()) z.re = Real(parse_rational(re_part), precision);
    } catch (const parse_error& e) {
      throw parse_error("malformed real part", e.position());
    }
    try {
      z.im = Real(parse_rational(im_part), precision);
    } catch (const parse_error& e) {
      throw parse_error("malformed imaginary part", im_offset + e.position());
    }
    return Scalar(std::move(z));
  }
  Rational q = parse_rational(text);
  if (mode == Mode::Exact) return Scalar(std::move(q));
  return Scalar(Real(q, precision));
}

}  // namespace hypersum
