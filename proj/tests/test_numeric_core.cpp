#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "hypersum/gamma.hpp"
#include "oracles.hpp"

using namespace hypersum;

namespace {

Scalar q(long p, long d = 1) { return Scalar::ratio(p, d); }
Scalar f(double x, long prec = 256) { return Scalar(Real(x, prec)); }

double rel(const Complex& a, const Complex& b) {
  return (abs(a - b) / std::max(abs(a), abs(b))).to_double();
}

}  // namespace

TEST(Rational, ParsesFractionsAndDecimalsExactly) {
  EXPECT_EQ(parse_rational("-3/2"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_rational("-2.5e-3"), Rational(-1, 400));
  EXPECT_EQ(parse_rational("1e3"), Rational(1000));
}

TEST(Rational, ReportsPositionOfMalformedInput) {
  try {
    parse_rational("12/x");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.position(), 3u);
  }
  EXPECT_THROW(parse_rational(""), parse_error);
  EXPECT_THROW(parse_rational("1/0"), parse_error);
  EXPECT_THROW(parse_rational("1.2.3"), parse_error);
}

TEST(Rational, CanonicalStringRoundTrips) {
  gen::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Rational r = rng.rational(1000, 1000);
    const std::string s = to_string(r);
    EXPECT_EQ(to_string(parse_rational(s)), s);
    EXPECT_EQ(Scalar(parse_scalar(s, Mode::Exact)).to_string(), s);
  }
}

TEST(Real, RejectsMixedPrecision) {
  Real a(1.0, 64), b(2.0, 128);
  EXPECT_THROW(a + b, precision_mismatch);
  EXPECT_THROW(Complex(a, b), precision_mismatch);
  EXPECT_THROW(Real(1.0, 32), domain_error);
}

TEST(Real, ToStringRoundTrips) {
  Real x = sqrt(Real(2.0, 256));
  Real y(x.to_string(), 256);
  EXPECT_TRUE(x == y);
}

TEST(Scalar, ExactStaysExactAndFloatPromotes) {
  Scalar a = q(1, 3) + q(1, 6);
  EXPECT_TRUE(a.is_exact());
  EXPECT_EQ(a.to_string(), "1/2");
  Scalar b = a + f(0.25);
  EXPECT_FALSE(b.is_exact());
  EXPECT_EQ(b.precision(), 256);
  EXPECT_NEAR(b.real_double(), 0.75, 1e-15);
  EXPECT_THROW(q(1) / q(0), pole_error);
}

TEST(Scalar, ParsesComplexOnlyInFloatMode) {
  Scalar z = parse_scalar("1+i", Mode::Float, 128);
  EXPECT_EQ(z.precision(), 128);
  EXPECT_FALSE(z.is_real());
  EXPECT_NEAR(z.complex().im.to_double(), 1.0, 0);
  Scalar w = parse_scalar("0.5-2i", Mode::Float);
  EXPECT_NEAR(w.complex().re.to_double(), 0.5, 0);
  EXPECT_NEAR(w.complex().im.to_double(), -2.0, 0);
  EXPECT_THROW(parse_scalar("1+i", Mode::Exact), parse_error);
}

TEST(Scalar, IntegerDetectionIsToleranceFlaggedInFloatMode) {
  auto exact = as_integer(q(-3));
  ASSERT_TRUE(exact);
  EXPECT_FALSE(exact->tolerance_dependent);
  auto near = as_integer(f(-3.0 + 1e-14));
  ASSERT_TRUE(near);
  EXPECT_EQ(near->value, -3);
  EXPECT_TRUE(near->tolerance_dependent);
  EXPECT_FALSE(as_integer(f(-3.0 + 1e-9)));
  EXPECT_FALSE(as_nonpositive_integer(q(2)));
}

TEST(SphereValue, ReciprocalSwapsZeroAndInfinity) {
  SphereValue zero(q(0));
  EXPECT_TRUE(zero.reciprocal().is_infinity());
  EXPECT_TRUE(SphereValue::infinity().reciprocal().is_finite());
  EXPECT_TRUE(SphereValue::infinity().reciprocal().value().is_zero());
  EXPECT_EQ(SphereValue(q(4)).reciprocal().to_string(), "1/4");
  EXPECT_THROW(zero * SphereValue::infinity(), indeterminate_error);
  EXPECT_THROW(SphereValue::infinity().value(), pole_error);
  EXPECT_EQ(SphereValue::infinity().to_string(), "inf");
}

TEST(Gamma, SpotValues) {
  EXPECT_EQ(gamma(q(1)).value().to_string(), "1");
  EXPECT_EQ(gamma(q(6)).value().to_string(), "120");
  EXPECT_TRUE(gamma(q(0)).is_infinity());
  EXPECT_TRUE(gamma(q(-4)).is_infinity());
  EXPECT_TRUE(gamma(f(-4.0)).is_infinity());
  EXPECT_TRUE(gamma(f(-4.0)).tolerance_dependent());
  const double half_sqrt_pi = oracle::div(oracle::sqrt_pi(), oracle::Mp(2.0)).d();
  EXPECT_NEAR(gamma(q(3, 2)).value().real_double(), half_sqrt_pi, 1e-15);
  EXPECT_NEAR(gamma(f(1.5)).value().real_double(), half_sqrt_pi, 1e-15);
  EXPECT_THROW(gamma(q(1, 3)), unsupported_exact_error);
}

TEST(Gamma, ExactHalfIntegerForms) {
  auto g = exact_gamma_form(Rational(7, 2));
  ASSERT_TRUE(g);
  EXPECT_EQ(g->coefficient, Rational(15, 8));
  EXPECT_EQ(g->sqrt_pi_power, 1);
  auto h = exact_gamma_form(Rational(-3, 2));
  ASSERT_TRUE(h);
  EXPECT_EQ(h->coefficient, Rational(4, 3));
  EXPECT_FALSE(exact_gamma_form(Rational(1, 3)));
  EXPECT_FALSE(exact_gamma_form(Rational(-2)));
}

TEST(Gamma, MatchesMpfrOnRandomReals) {
  gen::Rng rng(2024);
  for (int i = 0; i < 300; ++i) {
    double x = rng.real(-50.0, 50.0);
    if (std::abs(x - std::round(x)) < 1e-3) continue;
    const Complex mine = gamma(f(x)).value().complex();
    const oracle::Mp ref = oracle::gamma(oracle::Mp(x));
    const double r = std::abs(mine.re.to_double() / ref.d() - 1.0);
    EXPECT_LT(r, 1e-13) << "x = " << x;
    EXPECT_TRUE(mine.im.is_zero());
  }
}

TEST(Gamma, ComplexSpotValues) {
  auto check = [](double re, double im, const char* ref_re, const char* ref_im) {
    const Complex mine = gamma(Scalar(Complex(re, im, 256))).value().complex();
    const Complex ref(Real(ref_re, 256), Real(ref_im, 256));
    EXPECT_LT(rel(mine, ref), 1e-13) << re << "+" << im << "i";
  };
  check(1, 1, "0.498015668118356042713691117462", "-0.154949828301810685124955130484");
  check(-2.5, 3, "0.000479788410841897012166885315043", "0.000298855711144858868164805841852");
  check(3, 4, "0.0052255384713692141947315103561", "-0.17254707929430018771913090143");
}

TEST(Gamma, ReflectionProperty) {
  gen::Rng rng(7);
  const Real pi_ = pi(256);
  for (int i = 0; i < 100; ++i) {
    const double x = rng.real(-20.0, 20.0);
    if (std::abs(x - std::round(x)) < 1e-6) continue;
    const Complex gx = gamma(f(x)).value().complex();
    const Complex g1x = gamma(f(1.0 - x)).value().complex();
    const Complex s = sin(Complex(Real(x, 256)) * pi_);
    const Complex prod = gx * g1x * s / Complex(pi_);
    EXPECT_LT(rel(prod, Complex(Real(1.0, 256))), 1e-12) << "x = " << x;
  }
}

TEST(Gamma, RecurrenceProperty) {
  gen::Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const Complex x(Real(rng.real(-15, 15), 256), Real(rng.real(-5, 5), 256));
    const Complex lhs = gamma(Scalar(x + 1)).value().complex();
    const Complex rhs = x * gamma(Scalar(x)).value().complex();
    EXPECT_LT(rel(lhs, rhs), 1e-13);
  }
}

TEST(Pochhammer, SpotValues) {
  EXPECT_EQ(pochhammer(q(5), 3).to_string(), "210");
  EXPECT_EQ(pochhammer(q(7, 3), 0).to_string(), "1");
  // (m+1)_{-1} = 1/m
  EXPECT_EQ(pochhammer(q(1, 3) + q(1), -1).to_string(), "3");
  EXPECT_EQ(pochhammer(q(-2), 3).to_string(), "0");
  EXPECT_TRUE(pochhammer_sphere(q(2), -2).is_infinity());
  EXPECT_THROW(pochhammer(q(2), -2), pole_error);
  EXPECT_EQ(pochhammer(q(-5, 2), -2).to_string(), "4/63");
}

TEST(Pochhammer, InverseIndexProperty) {
  gen::Rng rng(3);
  for (int i = 0; i < 60; ++i) {
    const Scalar a = rng.scalar(40, 12);
    for (long j = 0; j <= 30; ++j) {
      SphereValue up = pochhammer_sphere(a, j);
      SphereValue down = pochhammer_sphere(a + Scalar(j), -j);
      if (up.is_infinity() || down.is_infinity() || up.value().is_zero()) continue;
      EXPECT_EQ((up * down).value().to_string(), "1");
    }
  }
}

TEST(Pochhammer, SplitIndexProperty) {
  gen::Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const Scalar a = rng.scalar(30, 9);
    const long j = rng.integer(0, 12), s = rng.integer(0, 12);
    EXPECT_EQ(pochhammer(a, j + s), pochhammer(a, j) * pochhammer(a + Scalar(j), s));
  }
}

TEST(Pochhammer, MatchesRawProduct) {
  gen::Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const mpq_class a = rng.rational(30, 9);
    const long j = rng.integer(0, 20);
    EXPECT_EQ(pochhammer(Scalar(a), j).exact(), oracle::rising(a, j));
  }
}

TEST(GammaRatio, CancelsPolesThroughPochhammer) {
  // beta+1-m = 7/6, alpha = -2
  EXPECT_EQ(gamma_ratio(q(7, 6), q(-5, 6)).to_string(), "-5/36");
  EXPECT_EQ(gamma_ratio(q(5, 7), q(5, 7)).to_string(), "1");
  EXPECT_EQ(gamma_ratio(q(-1), q(-3)).to_string(), "6");
  EXPECT_EQ(gamma_ratio(q(-1, 2), q(0)).to_string(), "0");
  EXPECT_TRUE(gamma_ratio(q(0), q(1, 2)).is_infinity());
}

TEST(GammaRatio, AgreesWithQuotientOfGammas) {
  gen::Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const double x = rng.real(-12, 12), y = rng.real(-12, 12);
    if (std::abs(x - std::round(x)) < 1e-4 || std::abs(y - std::round(y)) < 1e-4) continue;
    const Complex r = gamma_ratio(f(x), f(y)).value().complex();
    const Complex g = gamma(f(x)).value().complex() / gamma(f(y)).value().complex();
    EXPECT_LT(rel(r, g), 1e-12);
    const double ref = oracle::div(oracle::gamma(oracle::Mp(x)), oracle::gamma(oracle::Mp(y))).d();
    EXPECT_LT(std::abs(r.re.to_double() / ref - 1.0), 1e-13);
  }
}

TEST(Gamma, MeetsTargetAtDoublePrecision) {
  gen::Rng rng(2025);
  for (int i = 0; i < 300; ++i) {
    const double x = rng.real(-50.0, 50.0);
    if (std::abs(x - std::round(x)) < 1e-3) continue;
    const double mine = gamma(f(x, 53)).value().real_double();
    const double ref = oracle::gamma(oracle::Mp(x)).d();
    EXPECT_LT(std::abs(mine / ref - 1.0), 1e-13) << "x = " << x;
  }
}
