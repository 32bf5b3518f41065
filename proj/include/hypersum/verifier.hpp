#pragma once

// Identity reports: comparison of two Riemann-sphere values with tolerances,
// theorem checks for S, the nonterminating unit-argument counterexample,
// parallel grid sweeps and an exact brute-force oracle for terminating S.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hypersum/classical_identities.hpp"
#include "hypersum/ramanujan.hpp"

namespace hypersum {

enum class Verdict { ExactMatch, WithinTolerance, Mismatch, PoleSkipped, NotEvaluated };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::ExactMatch: return "ExactMatch";
    case Verdict::WithinTolerance: return "WithinTolerance";
    case Verdict::Mismatch: return "Mismatch";
    case Verdict::PoleSkipped: return "PoleSkipped";
    case Verdict::NotEvaluated: return "NotEvaluated";
  }
  return "?";
}

inline bool is_match(Verdict v) { return v == Verdict::ExactMatch || v == Verdict::WithinTolerance; }

struct Tolerances {
  double rel = 1e-9;
  double abs = 1e-30;
};

/// Nonnegative difference; exact_zero is set only for literal equality of
/// exact values.
struct Magnitude {
  bool exact_zero = false;
  double value = 0.0;
  std::optional<Rational> exact;

  std::string to_string() const {
    if (exact) return hypersum::to_string(*exact);
    return Real(value, 53).to_string();
  }
};

/// Alternative evaluation of the same quantity, kept for cross-route checks.
struct RouteValue {
  std::string name;
  std::optional<SphereValue> value;
  std::string error;
};

struct IdentityReport {
  std::string identity;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::optional<SphereValue> lhs;
  std::optional<SphereValue> rhs;
  Magnitude abs_diff;
  Magnitude rel_diff;
  Verdict verdict = Verdict::NotEvaluated;
  Tolerances tolerances;
  Mode mode = Mode::Exact;
  long precision = 0;
  /// Verdict class predicted for these parameters: match or mismatch.
  bool expect_match = true;
  bool unexpected = false;
  bool experimental = false;
  std::vector<RouteValue> routes;
  std::string note;
  double seconds = 0.0;

  bool as_expected() const { return !unexpected; }
};

/// Verdict for lhs against rhs. Any infinite side yields PoleSkipped.
inline IdentityReport compare(const SphereValue& lhs, const SphereValue& rhs, const Tolerances& tol) {
  IdentityReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerances = tol;
  if (lhs.is_infinity() || rhs.is_infinity()) {
    r.verdict = Verdict::PoleSkipped;
    r.note = "pole on at least one side";
    return r;
  }
  const Scalar& a = lhs.value();
  const Scalar& b = rhs.value();
  if (a.is_exact() && b.is_exact()) {
    r.mode = Mode::Exact;
    const Rational d = abs(Rational(a.exact() - b.exact()));
    r.abs_diff = Magnitude{d == 0, d.get_d(), d};
    const Rational scale = std::max(Rational(abs(a.exact())), Rational(abs(b.exact())));
    const Rational rel = scale == 0 ? Rational(0) : Rational(d / scale);
    r.rel_diff = Magnitude{rel == 0, rel.get_d(), rel};
    if (d == 0) r.verdict = Verdict::ExactMatch;
    else if (rel.get_d() <= tol.rel || d.get_d() <= tol.abs) r.verdict = Verdict::WithinTolerance;
    else r.verdict = Verdict::Mismatch;
    return r;
  }
  r.mode = Mode::Float;
  const long prec = a.is_exact() ? b.precision() : a.precision();
  r.precision = prec;
  const Complex ca = a.to_complex(prec);
  const Complex cb = b.to_complex(prec);
  const double d = abs(ca - cb).to_double();
  const double scale = std::max(abs(ca).to_double(), abs(cb).to_double());
  const double rel = scale == 0.0 ? 0.0 : d / scale;
  r.abs_diff = Magnitude{false, d, std::nullopt};
  r.rel_diff = Magnitude{false, rel, std::nullopt};
  r.verdict = (rel <= tol.rel || d <= tol.abs) ? Verdict::WithinTolerance : Verdict::Mismatch;
  return r;
}

namespace detail {

inline std::vector<std::pair<std::string, std::string>> s_parameters(const RamanujanParams& p) {
  return {{"alpha", p.alpha.to_string()}, {"beta", p.beta.to_string()}, {"m", p.m.to_string()},
          {"z", p.z.to_string()}};
}

/// Runs `body`, mapping evaluation failures onto verdicts.
template <class Body>
IdentityReport guarded(Body&& body, const Tolerances& tol) {
  const auto start = std::chrono::steady_clock::now();
  IdentityReport r;
  try {
    r = body();
  } catch (const pole_error& e) {
    r.verdict = Verdict::PoleSkipped;
    r.note = e.what();
  } catch (const indeterminate_error& e) {
    r.verdict = Verdict::PoleSkipped;
    r.note = e.what();
  } catch (const divergent_error& e) {
    r.verdict = Verdict::NotEvaluated;
    r.note = e.what();
  } catch (const no_convergence_error& e) {
    r.verdict = Verdict::NotEvaluated;
    r.note = std::string(e.what()) + " (partial sum " + e.partial_sum() + ")";
  } catch (const unsupported_exact_error& e) {
    r.verdict = Verdict::NotEvaluated;
    r.note = e.what();
  }
  r.tolerances = tol;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace detail

/// Checks S(-k, beta, m, z) against (beta+1-m-k)_k.
inline IdentityReport verify_theorem(long k, const Scalar& beta, const Scalar& m, const Scalar& z,
                                     const EvalContext& ctx = {}, const Tolerances& tol = {}) {
  const RamanujanParams p = RamanujanParams::terminating(k, beta, m, z);
  IdentityReport r = detail::guarded(
      [&] {
        EvalResult lhs = s_direct(p, ctx);
        IdentityReport c = compare(lhs.value, s_closed_form(p, ctx.precision), tol);
        c.experimental = lhs.experimental;
        return c;
      },
      tol);
  r.identity = "theorem";
  r.parameters = detail::s_parameters(p);
  r.expect_match = true;
  r.unexpected = r.verdict == Verdict::Mismatch;
  return r;
}

/// Checks S(alpha, beta, m, z) against the closed form at arbitrary alpha.
/// The identity is expected to hold for terminating alpha and for z = 0
/// with Re(beta+1-m) > 0; everywhere else a mismatch is the expected outcome.
inline IdentityReport verify_point(const Scalar& alpha, const Scalar& beta, const Scalar& m, const Scalar& z,
                                   const EvalContext& ctx = {}, const Tolerances& tol = {}) {
  const RamanujanParams p(alpha, beta, m, z);
  if (auto k = p.terminating_k()) {
    IdentityReport r = verify_theorem(*k, beta, m, z, ctx, tol);
    r.parameters = detail::s_parameters(p);
    return r;
  }
  const bool z_zero = z.is_zero();
  const auto n = as_integer(z);
  bool expect_match = false;
  if (z_zero) {
    const Scalar excess = beta + Scalar(1) - m;
    expect_match = excess.is_exact() ? excess.real_sign() > 0 : excess.real_double() > 0;
  }
  IdentityReport r = detail::guarded(
      [&] {
        EvalResult lhs = (n && n->value >= 0) ? s_integer_form(p, ctx) : s_direct(p, ctx);
        IdentityReport c = compare(lhs.value, s_closed_form(p, ctx.precision), tol);
        c.experimental = lhs.experimental;
        return c;
      },
      tol);
  r.identity = "theorem";
  r.parameters = detail::s_parameters(p);
  r.expect_match = expect_match;
  if (is_match(r.verdict)) r.unexpected = !expect_match;
  else if (r.verdict == Verdict::Mismatch) r.unexpected = expect_match;
  return r;
}

/// Relative agreement of cross-route values in counterexample_unit_z.
inline constexpr double kRouteTolerance = 1e-8;

/// S(1) at m = alpha+beta+1 through independent routes, compared with the
/// closed form Gamma(-alpha)/Gamma(0) = 0. Non-integer alpha must give a
/// mismatch; nonpositive integer alpha must match.
inline IdentityReport counterexample_unit_z(const Scalar& alpha, const Scalar& beta, const EvalContext& ctx = {},
                                         const Tolerances& tol = {}) {
  const long prec = ctx.precision;
  const Scalar one(1);
  const Scalar m = alpha + beta + one;
  const RamanujanParams p(alpha, beta, m, Scalar(1));
  const auto alpha_int = as_integer(alpha);
  const bool alpha_terminating = p.terminating_k().has_value();
  const auto start = std::chrono::steady_clock::now();

  std::vector<RouteValue> routes;
  auto route = [&](std::string name, auto&& fn) {
    RouteValue rv{std::move(name), std::nullopt, {}};
    try {
      rv.value = fn();
    } catch (const error& e) {
      rv.error = e.what();
    }
    routes.push_back(std::move(rv));
  };
  if (alpha_terminating) route("theorem-series", [&] { return s_direct(p, ctx).value; });
  route("recast-4F3", [&] {
    RecastForm f = recast_params(alpha, beta, m, 1, prec);
    return f.prefactor * eval_at_1(f.params, ctx).value;
  });
  route("gauss-2F1", [&] {
    HypParams h({beta + one, alpha}, {m + one});
    return gamma_ratio(beta + one, m, prec) * eval_at_1(h, ctx).value;
  });
  route("closed-expression", [&] {
    // m / ((m - alpha) Gamma(alpha + 1))
    return SphereValue(m / (m - alpha)) * gamma_ratio(one, alpha + one, prec);
  });

  // Cross-route agreement.
  std::vector<const SphereValue*> values;
  for (const RouteValue& rv : routes)
    if (rv.value) values.push_back(&*rv.value);
  bool routes_agree = values.size() >= 2;
  std::string disagreement;
  for (std::size_t i = 1; routes_agree && i < values.size(); ++i) {
    IdentityReport c = compare(*values[0], *values[i], Tolerances{kRouteTolerance, tol.abs});
    if (!is_match(c.verdict)) {
      routes_agree = false;
      disagreement = "routes disagree (rel " + c.rel_diff.to_string() + ")";
    }
  }

  IdentityReport r;
  const SphereValue rhs = s_closed_form(p, prec);
  if (values.empty()) {
    r.verdict = Verdict::NotEvaluated;
    r.note = "no route produced a value";
  } else {
    // Report the most exact available route as the left-hand side.
    const SphereValue* best = values.front();
    for (const SphereValue* v : values)
      if (v->is_finite() && v->value().is_exact()) {
        best = v;
        break;
      }
    r = compare(*best, rhs, tol);
    if (!routes_agree) r.note = values.size() < 2 ? "fewer than two routes evaluated" : disagreement;
  }
  r.identity = "counterexample";
  r.parameters = {{"alpha", alpha.to_string()}, {"beta", beta.to_string()}, {"m", m.to_string()}, {"z", "1"}};
  r.tolerances = tol;
  r.routes = std::move(routes);
  r.expect_match = alpha_terminating;
  const bool nonzero_lhs = r.lhs && r.lhs->is_finite() && !r.lhs->value().is_zero();
  if (alpha_terminating) {
    r.unexpected = !routes_agree || !is_match(r.verdict);
  } else {
    r.unexpected = !routes_agree || r.verdict != Verdict::Mismatch || !nonzero_lhs;
  }
  if (!alpha_terminating) {
    for (const auto& [name, value] : {std::pair{"beta+1", beta + one}, {"m", m}, {"m+1", m + one}}) {
      const auto n = as_integer(value);
      if (n && n->value <= 0) {
        r.verdict = Verdict::PoleSkipped;
        r.unexpected = false;
        r.note = std::string(name) + " is a nonpositive integer; S(1) has poles in its terms";
        break;
      }
    }
  }
  if (alpha_int && !alpha_terminating && r.note.empty())
    r.note = "alpha is a positive integer; the closed form is not zero here";
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// One parameter point of a sweep.
struct GridPoint {
  std::size_t index = 0;
  Scalar alpha{0};
  Scalar beta{0};
  Scalar m{0};
  Scalar z{0};
};

struct SweepSummary {
  std::map<Verdict, std::size_t> counts;
  std::size_t unexpected = 0;
  std::size_t total = 0;
};

inline SweepSummary summarize(const std::vector<IdentityReport>& reports) {
  SweepSummary s;
  for (Verdict v : {Verdict::ExactMatch, Verdict::WithinTolerance, Verdict::Mismatch, Verdict::PoleSkipped,
                    Verdict::NotEvaluated})
    s.counts[v] = 0;
  for (const IdentityReport& r : reports) {
    ++s.counts[r.verdict];
    if (r.unexpected) ++s.unexpected;
  }
  s.total = reports.size();
  return s;
}

/// Runs verify_point over the grid on `jobs` threads; reports come back in
/// grid order.
inline std::vector<IdentityReport> sweep(const std::vector<GridPoint>& grid, const EvalContext& ctx = {},
                                         const Tolerances& tol = {}, unsigned jobs = 1) {
  std::vector<IdentityReport> out(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      const GridPoint& g = grid[i];
      try {
        out[i] = verify_point(g.alpha, g.beta, g.m, g.z, ctx, tol);
      } catch (const std::exception& e) {
        out[i].verdict = Verdict::NotEvaluated;
        out[i].note = e.what();
        out[i].identity = "theorem";
        out[i].parameters = {{"alpha", g.alpha.to_string()},
                             {"beta", g.beta.to_string()},
                             {"m", g.m.to_string()},
                             {"z", g.z.to_string()}};
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(grid.size(), 1))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  std::vector<std::size_t> order(grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return grid[a].index < grid[b].index;
  });
  std::vector<IdentityReport> sorted;
  sorted.reserve(out.size());
  for (std::size_t i : order) sorted.push_back(std::move(out[i]));
  return sorted;
}

/// Exact S(-k, beta, m, z) from raw rational products: each gamma ratio in
/// the j-th term is expanded as a rising factorial, with the j = 0 factor
/// m Gamma(m) / Gamma(m+1) taken as 1.
inline Rational brute_force_oracle(long k, const Rational& beta, const Rational& m, const Rational& z) {
  if (k < 0) throw domain_error("k must be nonnegative");
  auto rising = [](Rational a, long n) {
    Rational p = 1;
    for (long i = 0; i < n; ++i, a += 1) p *= a;
    return p;
  };
  Rational total = 0;
  for (long j = 0; j <= k; ++j) {
    // Gamma(beta+1+jz) / Gamma(-k+beta+1+j(z+1)) = (-k+beta+1+j(z+1))_{k-j}
    const Rational first = rising(Rational(beta + 1 + j * z - k + j), k - j);
    // m Gamma(m+j(z+1)) / Gamma(m+jz+1) = m (m+jz+1)_{j-1}
    const Rational second = j == 0 ? Rational(1) : Rational(m * rising(Rational(m + j * z + 1), j - 1));
    Rational coeff(binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(j)));
    if (j % 2 == 1) coeff = -coeff;
    total += first * second * coeff;
  }
  total.canonicalize();
  return total;
}

}  // namespace hypersum
