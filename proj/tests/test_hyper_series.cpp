#include <gtest/gtest.h>

#include <algorithm>

#include "generators.hpp"
#include "hypersum/classical_identities.hpp"
#include "hypersum/hyper_series.hpp"
#include "oracles.hpp"

using namespace hypersum;

namespace {

Scalar q(long p, long d = 1) { return Scalar::ratio(p, d); }

double value_double(const EvalResult& r) { return r.value.value().real_double(); }

}  // namespace

TEST(Classify, TerminatingTakesSmallestK) {
  auto c = classify(HypParams({q(5, 2), q(0)}, {q(7)}));
  EXPECT_EQ(c.kind, SeriesKind::Terminating);
  EXPECT_EQ(c.k, 0);
  auto d = classify(HypParams({q(-4), q(1), q(-2)}, {q(3, 2)}));
  EXPECT_EQ(d.kind, SeriesKind::Terminating);
  EXPECT_EQ(d.k, 2);
}

TEST(Classify, ConvergenceCriterion) {
  EXPECT_EQ(classify(HypParams({q(1), q(1)}, {q(3)})).kind, SeriesKind::Convergent);
  EXPECT_EQ(classify(HypParams({q(1), q(1)}, {q(2)})).kind, SeriesKind::Divergent);  // boundary
  EXPECT_EQ(classify(HypParams({q(1), q(1)}, {q(3, 2)})).kind, SeriesKind::Divergent);
  EXPECT_EQ(classify(HypParams({q(1), q(1), q(1)}, {q(9)})).kind, SeriesKind::Divergent);
  EXPECT_EQ(classify(HypParams({q(1)}, {q(3), q(2)})).kind, SeriesKind::Convergent);
}

TEST(Classify, IntegerFormAtZeroDivergesWhenExcessNonpositive) {
  // numerators (m, alpha), denominator alpha+beta+1 with Re(beta+1-m) <= 0
  const Scalar alpha = q(1, 3), beta = q(1, 2), m = q(2);
  EXPECT_EQ(classify(HypParams({m, alpha}, {alpha + beta + q(1)})).kind, SeriesKind::Divergent);
}

TEST(Classify, RecastFormIsSaalschutzian) {
  const Scalar a = q(2, 7), b = q(-3, 5), m = q(4, 9);
  HypParams p({b + q(1), m / q(2), (m + q(1)) / q(2), a}, {m + q(1), (a + b + q(1)) / q(2), (a + b + q(2)) / q(2)});
  EXPECT_TRUE(classify(p).saalschutzian);
  EXPECT_FALSE(classify(HypParams({q(1), q(1)}, {q(4)})).saalschutzian);
}

TEST(Classify, FloatSaalschutzianUsesAbsTol) {
  Scalar a(Real(0.25, 256)), b(Real(0.5, 256));
  const Rational tiny = Rational(1) / Rational(Integer("10000000000000000000000000000000000000000"));
  HypParams p({a, b, q(-2)}, {Scalar(Real(Rational(-5, 4) + tiny, 256)), q(1)});
  EXPECT_TRUE(classify(p).saalschutzian);
  HypParams off({a, b, q(-2)}, {Scalar(Real(Rational(-5, 4) + Rational(1, 1000000), 256)), q(1)});
  EXPECT_FALSE(classify(off).saalschutzian);
}

TEST(Classify, RejectsUndefinedSeries) {
  EXPECT_THROW(HypParams({q(1), q(2)}, {q(-3)}), pole_error);
  EXPECT_THROW(HypParams({q(-5), q(2)}, {q(-3)}), pole_error);
  // Truncation at k = 1 reaches the denominator -1 exactly at its zero.
  EXPECT_NO_THROW(HypParams({q(-1), q(2)}, {q(-1)}));
  EXPECT_NO_THROW(HypParams({q(-2), q(2)}, {q(-3)}));
}

TEST(Classify, PermutationInvariant) {
  gen::Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    std::vector<Scalar> num, den;
    const int p = static_cast<int>(rng.integer(1, 4));
    for (int j = 0; j < p; ++j) num.push_back(Scalar(rng.rational(12, 5)));
    for (int j = 0; j < p - 1 + static_cast<int>(rng.integer(0, 1)); ++j)
      den.push_back(Scalar(rng.non_integer(12, 5)));
    const auto base = classify(num, den, 1e-30);
    for (int s = 0; s < 4; ++s) {
      std::vector<std::size_t> pn(num.size()), pd(den.size());
      for (std::size_t t = 0; t < pn.size(); ++t) pn[t] = t;
      for (std::size_t t = 0; t < pd.size(); ++t) pd[t] = t;
      for (std::size_t t = pn.size(); t > 1; --t) std::swap(pn[t - 1], pn[rng.integer(0, static_cast<long>(t) - 1)]);
      for (std::size_t t = pd.size(); t > 1; --t) std::swap(pd[t - 1], pd[rng.integer(0, static_cast<long>(t) - 1)]);
      std::vector<Scalar> n2, d2;
      for (auto t : pn) n2.push_back(num[t]);
      for (auto t : pd) d2.push_back(den[t]);
      const auto c = classify(n2, d2, 1e-30);
      EXPECT_EQ(c.kind, base.kind);
      EXPECT_EQ(c.k, base.k);
      EXPECT_EQ(c.saalschutzian, base.saalschutzian);
    }
  }
}

TEST(Term, SpotValues) {
  HypParams p({q(1), q(1)}, {q(3)});
  EXPECT_EQ(term(p, 0).to_string(), "1");
  EXPECT_EQ(term(p, 2).to_string(), "1/6");
  EXPECT_EQ(term(HypParams({q(-1), q(2, 3)}, {q(5)}), 2).to_string(), "0");
}

TEST(EvalAt1, TrivialAndTwoTermSums) {
  auto zero = eval_at_1(HypParams({q(7, 3), q(0)}, {q(-5, 2)}));
  EXPECT_EQ(zero.value.to_string(), "1");
  EXPECT_TRUE(zero.tail_bound.exact_zero);
  EXPECT_EQ(zero.method, SummationMethod::Exact);
  const Scalar a = q(3, 7), c = q(11, 5);
  auto two = eval_at_1(HypParams({q(-1), a}, {c}));
  EXPECT_EQ(two.value.value(), q(1) - a / c);
  EXPECT_EQ(two.terms_used, 2u);
}

TEST(EvalAt1, TelescopingSeries) {
  auto r = eval_at_1(HypParams({q(1), q(1)}, {q(3)}));
  EXPECT_FALSE(r.value.value().is_exact());
  EXPECT_NEAR(value_double(r), 2.0, 1e-12);
  EXPECT_FALSE(r.tail_bound.exact_zero);
}

TEST(EvalAt1, RefusesDivergentAndReportsNoConvergence) {
  EXPECT_THROW(eval_at_1(HypParams({q(1), q(1)}, {q(2)})), divergent_error);
  EvalContext ctx;
  ctx.max_terms = 50;
  ctx.accelerate = false;
  try {
    eval_at_1(HypParams({q(1, 3), q(1, 4)}, {q(13, 12)}), ctx);
    FAIL();
  } catch (const no_convergence_error& e) {
    EXPECT_EQ(e.terms(), 50u);
    EXPECT_FALSE(e.partial_sum().empty());
  }
}

TEST(EvalAt1, GeometricDecayUsesDirectSum) {
  // 1F2(1; 3, 2; 1) = sum 2 / ((j+2)! (j+1))
  auto r = eval_at_1(HypParams({q(1)}, {q(3), q(2)}));
  EXPECT_EQ(r.method, SummationMethod::Direct);
  mpq_class ref = 0;
  for (long j = 0; j < 40; ++j) ref += mpq_class(2) / (oracle::factorial(j + 2) * oracle::factorial(j + 1));
  EXPECT_NEAR(value_double(r), ref.get_d(), 1e-12 * ref.get_d());
  EXPECT_LE(std::abs(value_double(r) - ref.get_d()), std::max(r.tail_bound.value, 1e-16));
}

TEST(EvalAt1, TerminatingMatchesExplicitTermSum) {
  gen::Rng rng(22);
  for (int i = 0; i < 200; ++i) {
    const long k = rng.integer(0, 8);
    std::vector<mpq_class> num{mpq_class(-k)}, den;
    const int p = static_cast<int>(rng.integer(0, 3));
    for (int j = 0; j < p; ++j) num.push_back(rng.rational(15, 7));
    const int qn = static_cast<int>(rng.integer(0, 3));
    for (int j = 0; j < qn; ++j) den.push_back(rng.non_integer(15, 7));
    std::vector<Scalar> sn(num.begin(), num.end()), sd(den.begin(), den.end());
    HypParams params(sn, sd);
    auto r = eval_at_1(params);
    ASSERT_TRUE(r.value.value().is_exact());
    EXPECT_TRUE(r.tail_bound.exact_zero);
    Scalar explicit_sum(0);
    for (long j = 0; j <= classify(params).k; ++j) explicit_sum += term(params, j);
    EXPECT_EQ(r.value.value(), explicit_sum);
    EXPECT_EQ(r.value.value().exact(), oracle::hyp_terminating(num, den));
  }
}

TEST(EvalAt1, FloatTerminatingIsFinite) {
  Scalar c(Real(2.5, 128));
  EvalContext ctx;
  ctx.precision = 128;
  auto r = eval_at_1(HypParams({q(-3), q(1, 2)}, {c}), ctx);
  EXPECT_EQ(r.method, SummationMethod::FiniteFloat);
  const double ref = oracle::hyp_terminating({-3, mpq_class(1, 2)}, {mpq_class(5, 2)}).get_d();
  EXPECT_NEAR(value_double(r), ref, 1e-15);
}

TEST(EvalAt1, ComplexParameters) {
  // 2F1(a, b; c; 1) with complex a against the Gauss closed form.
  Scalar a(Complex(0.25, 0.5, 256)), b(Real(0.125, 256)), c(Real(2.0, 256));
  auto r = eval_at_1(HypParams({a, b}, {c}));
  auto g = gauss_closed_form(a, b, c);
  const Complex diff = r.value.value().complex() - g.value.value().complex();
  EXPECT_LT(abs(diff).to_double() / abs(g.value.value().complex()).to_double(), 1e-10);
}

TEST(EvalAt1, GaussTheoremOnRandomRationals) {
  gen::Rng rng(23);
  int checked = 0;
  while (checked < 100) {
    const mpq_class a = rng.rational(20, 8), b = rng.rational(20, 8);
    const mpq_class c = a + b + gen::frac(1, 2) + gen::frac(rng.integer(0, 24), 8);
    const mpq_class cs[] = {mpq_class(c - a), mpq_class(c - b), c};
    if (std::any_of(std::begin(cs), std::end(cs), [](const mpq_class& x) { return x <= 0 && x.get_den() == 1; }))
      continue;
    if ((a <= 0 && a.get_den() == 1) || (b <= 0 && b.get_den() == 1)) continue;
    auto r = eval_at_1(HypParams({Scalar(a), Scalar(b)}, {Scalar(c)}));
    const oracle::Mp ref = oracle::gauss(a, b, c);
    const double mine = r.value.value().real_double();
    EXPECT_LT(std::abs(mine - ref.d()), 1e-10 * std::abs(ref.d())) << a << " " << b << " " << c;
    ++checked;
  }
}
