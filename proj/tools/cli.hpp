#pragma once

// hypersum {eval|verify|sweep}

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "io.hpp"

namespace hypersum::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDivergent = 2, kPole = 3, kMismatch = 4 };

inline long default_precision() {
  if (const char* env = std::getenv("HYPERSUM_PRECISION")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= kMinPrecision) return v;
  }
  return kDefaultPrecision;
}

inline int exit_code(Verdict v, bool unexpected) {
  if (unexpected) return kMismatch;
  switch (v) {
    case Verdict::ExactMatch:
    case Verdict::WithinTolerance:
    case Verdict::Mismatch: return kOk;
    case Verdict::PoleSkipped: return kPole;
    case Verdict::NotEvaluated: return kDivergent;
  }
  return kMismatch;
}

struct Options {
  std::string alpha, beta, m, z;
  std::string a, c, d;
  long k = 0, n = 1, r = 1;
  std::string num, den;
  std::string mode = "exact";
  long precision = default_precision();
  double rel_tol = 1e-12;
  double abs_tol = 1e-30;
  double cmp_rel_tol = Tolerances{}.rel;
  std::size_t max_terms = EvalContext{}.max_terms;
  unsigned jobs = 1;
  std::string out;
  std::string summary;
  std::string grid;
  std::string format = "json";
  std::string form = "direct";
  bool no_accelerate = false;

  Mode parsed_mode() const { return mode == "float" ? Mode::Float : Mode::Exact; }
  Scalar scalar(const std::string& name, const std::string& text) const {
    if (text.empty()) throw CLI::ValidationError("--" + name, "is required");
    try {
      return parse_scalar(text, parsed_mode(), precision);
    } catch (const parse_error& e) {
      throw parse_error("--" + name + "=" + text + ": " + e.reason(), e.position());
    }
  }
  std::vector<Scalar> list(const std::string& name, const std::string& text) const {
    std::vector<Scalar> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(scalar(name, item));
    return out;
  }
  EvalContext context() const {
    EvalContext ctx;
    ctx.precision = precision;
    ctx.max_terms = max_terms;
    ctx.rel_tol = rel_tol;
    ctx.abs_tol = abs_tol;
    ctx.accelerate = !no_accelerate;
    ctx.validate();
    return ctx;
  }
  Tolerances tolerances() const { return Tolerances{cmp_rel_tol, abs_tol}; }
};

inline io::json record(const std::string& command, io::json params, const Options& o) {
  io::json j;
  j["command"] = command;
  j["parameters"] = std::move(params);
  j["mode"] = o.mode;
  j["precision"] = o.precision;
  return j;
}

inline double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

inline int emit_eval(std::ostream& out, const Options& o, io::json rec, const EvalResult& r) {
  rec["result"] = io::to_json(r);
  rec["verdict"] = nullptr;
  if (o.format == "csv") {
    const io::json& v = rec["result"]["value"];
    out << "command,value,exact,terms_used,method\n"
        << io::csv_field(rec["command"].get<std::string>()) << ',' << io::csv_field(v["decimal"].get<std::string>())
        << ',' << (v["exact"].is_null() ? "" : io::csv_field(v["exact"].get<std::string>())) << ','
        << r.terms_used << ',' << to_string(r.method) << '\n';
  } else {
    out << rec.dump(2) << '\n';
  }
  return kOk;
}

inline int emit_report(std::ostream& out, const Options& o, const std::string& command, const IdentityReport& r,
                       double seconds) {
  io::json rec = record(command, io::parameters_json(r.parameters), o);
  rec["report"] = io::to_json(r);
  rec["verdict"] = to_string(r.verdict);
  rec["timing_seconds"] = seconds;
  if (o.format == "csv") {
    out << "command,lhs,rhs,rel_diff,verdict,unexpected\n"
        << command << ',' << io::csv_field(r.lhs ? r.lhs->to_string() : "") << ','
        << io::csv_field(r.rhs ? r.rhs->to_string() : "") << ',' << io::csv_field(r.rel_diff.to_string()) << ','
        << to_string(r.verdict) << ',' << (r.unexpected ? "true" : "false") << '\n';
  } else {
    out << rec.dump(2) << '\n';
  }
  return exit_code(r.verdict, r.unexpected);
}

inline int cmd_eval_pfq(std::ostream& out, const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Scalar> num = o.list("num", o.num);
  std::vector<Scalar> den = o.list("den", o.den);
  HypParams params(num, den);
  EvalResult r = eval_at_1(params, o.context());
  io::json rec = record("eval pfq", io::json{{"num", o.num}, {"den", o.den}}, o);
  rec["timing_seconds"] = seconds_since(t0);
  return emit_eval(out, o, std::move(rec), r);
}

inline int cmd_eval_ramanujan(std::ostream& out, const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const RamanujanParams p(o.scalar("alpha", o.alpha), o.scalar("beta", o.beta), o.scalar("m", o.m),
                          o.scalar("z", o.z.empty() ? std::string("0") : o.z));
  const EvalContext ctx = o.context();
  auto evaluate = [&]() -> EvalResult {
    if (o.form == "direct") return s_direct(p, ctx);
    if (o.form == "integer") return s_integer_form(p, ctx);
    if (o.form == "recast") {
      RecastForm f = recast_params(p.alpha, p.beta, p.m, detail::nonnegative_integer_z(p), ctx.precision);
      EvalResult r = eval_at_1(f.params, ctx);
      r.value = f.prefactor * r.value;
      return r;
    }
    SphereValue v = s_closed_form(p, ctx.precision);
    const bool exact = v.is_finite() && v.value().is_exact();
    return EvalResult{std::move(v), 0, TailBound::zero(), SeriesClassification{SeriesKind::Terminating, 0, false, false},
                      exact ? SummationMethod::Exact : SummationMethod::FiniteFloat};
  };
  const EvalResult r = evaluate();
  io::json rec = record("eval ramanujan",
                        io::json{{"alpha", p.alpha.to_string()},
                                 {"beta", p.beta.to_string()},
                                 {"m", p.m.to_string()},
                                 {"z", p.z.to_string()},
                                 {"form", o.form}},
                        o);
  rec["timing_seconds"] = seconds_since(t0);
  return emit_eval(out, o, std::move(rec), r);
}

inline int cmd_verify(std::ostream& out, const Options& o, const std::string& which) {
  const auto t0 = std::chrono::steady_clock::now();
  const EvalContext ctx = o.context();
  const Tolerances tol = o.tolerances();
  IdentityReport r;
  if (which == "theorem") {
    if (o.k < 0) throw CLI::ValidationError("--k", "must be nonnegative");
    r = verify_theorem(o.k, o.scalar("beta", o.beta), o.scalar("m", o.m),
                       o.scalar("z", o.z.empty() ? std::string("0") : o.z), ctx, tol);
  } else if (which == "inner-sum") {
    const Scalar m = o.scalar("m", o.m);
    r = detail::guarded(
        [&] { return compare(SphereValue(inner_sum_E(m, o.n, o.r)), SphereValue(Scalar(o.r == 0 ? 1 : 0)), tol); },
        tol);
    r.identity = "inner-sum";
    r.parameters = {{"m", m.to_string()}, {"n", std::to_string(o.n)}, {"r", std::to_string(o.r)}};
    r.unexpected = r.verdict == Verdict::Mismatch;
  } else if (which == "finite-diff") {
    const Scalar m = o.scalar("m", o.m);
    r = compare(SphereValue(finite_difference_check(m, o.n, o.r)), SphereValue(Scalar(0)), tol);
    r.identity = "finite-diff";
    r.parameters = {{"m", m.to_string()}, {"n", std::to_string(o.n)}, {"r", std::to_string(o.r)}};
    r.unexpected = r.verdict == Verdict::Mismatch;
  } else if (which == "askey-ismail") {
    const Scalar a = o.scalar("a", o.a), c = o.scalar("c", o.c), d = o.scalar("d", o.d);
    r = detail::guarded(
        [&] {
          return compare(askey_ismail_lhs(a, c, d, o.k, ctx).value, askey_ismail_rhs(a, c, d, o.k, ctx).value, tol);
        },
        tol);
    r.identity = "askey-ismail";
    if (!askey_ismail_condition(a, d)) r.note += (r.note.empty() ? "" : "; ") + std::string("Re(d) > Re(a) > 0 fails");
    r.parameters = {{"a", a.to_string()}, {"c", c.to_string()}, {"d", d.to_string()}, {"k", std::to_string(o.k)}};
    r.unexpected = r.verdict == Verdict::Mismatch;
  } else {
    r = counterexample_unit_z(o.scalar("alpha", o.alpha), o.scalar("beta", o.beta), ctx, tol);
  }
  return emit_report(out, o, "verify " + which, r, seconds_since(t0));
}

inline io::GridSpec inline_grid(const Options& o) {
  io::GridSpec g;
  g.mode = o.parsed_mode();
  g.precision = o.precision;
  auto split = [](const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
      for (auto& s : io::expand_range(item)) out.push_back(s);
    return out;
  };
  g.alpha = split(o.alpha);
  g.beta = split(o.beta);
  g.m = split(o.m);
  g.z = split(o.z);
  return g;
}

inline int cmd_sweep(std::ostream& out, std::ostream& err, const Options& o, const std::string& ks) {
  io::GridSpec spec;
  if (!o.grid.empty()) {
    std::ifstream in(o.grid);
    if (!in) throw CLI::ValidationError("--grid", "cannot read '" + o.grid + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    spec = io::parse_grid(buf.str());
  } else {
    spec = inline_grid(o);
    std::stringstream ss(ks);
    std::string item;
    while (std::getline(ss, item, ','))
      for (auto& k : io::expand_range(item)) spec.alpha.push_back("-" + k);
  }
  EvalContext ctx = o.context();
  ctx.precision = spec.precision;
  const std::vector<GridPoint> grid = io::build_grid(spec);
  const std::vector<IdentityReport> reports = sweep(grid, ctx, o.tolerances(), o.jobs);
  const SweepSummary summary = summarize(reports);

  std::ostream* csv = &out;
  std::ofstream csv_file;
  if (!o.out.empty() && o.out != "-") {
    csv_file.open(o.out);
    if (!csv_file) throw CLI::ValidationError("--out", "cannot write '" + o.out + "'");
    csv = &csv_file;
  }
  io::write_sweep_csv(*csv, grid, reports);

  const std::string summary_text = io::to_json(summary).dump(2) + "\n";
  if (!o.summary.empty()) {
    std::ofstream s(o.summary);
    if (!s) throw CLI::ValidationError("--summary", "cannot write '" + o.summary + "'");
    s << summary_text;
  } else if (csv == &out) {
    err << summary_text;
  } else {
    out << summary_text;
  }
  return summary.unexpected == 0 ? kOk : kMismatch;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hypergeometric sums at unit argument and Ramanujan's S(alpha, beta, m, z)", "hypersum"};
  app.require_subcommand(1);
  Options o;
  std::string ks;

  auto common = [&](CLI::App* s) {
    s->add_option("--mode", o.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    s->add_option("--precision", o.precision, "float precision in bits")->check(CLI::Range(53L, 1L << 20));
    s->add_option("--rel-tol", o.rel_tol, "series stopping tolerance (relative)");
    s->add_option("--abs-tol", o.abs_tol, "absolute tolerance");
    s->add_option("--max-terms", o.max_terms, "term budget for infinite series");
    s->add_flag("--no-accelerate", o.no_accelerate, "disable Levin acceleration");
    s->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };
  auto s_params = [&](CLI::App* s) {
    s->add_option("--alpha", o.alpha, "alpha (rational, decimal, or complex in float mode)");
    s->add_option("--beta", o.beta, "beta");
    s->add_option("--m", o.m, "m");
    s->add_option("--z", o.z, "z");
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate a series");
  eval->require_subcommand(1);
  CLI::App* pfq = eval->add_subcommand("pfq", "pFq(num; den; 1)");
  pfq->add_option("--num", o.num, "comma-separated numerator parameters");
  pfq->add_option("--den", o.den, "comma-separated denominator parameters");
  common(pfq);
  CLI::App* ram = eval->add_subcommand("ramanujan", "S(alpha, beta, m, z)");
  s_params(ram);
  ram->add_option("--form", o.form, "direct, integer, recast or closed")
      ->check(CLI::IsMember({"direct", "integer", "recast", "closed"}));
  common(ram);

  CLI::App* verify = app.add_subcommand("verify", "check an identity");
  verify->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> verifiers;
  for (const char* name : {"theorem", "inner-sum", "finite-diff", "askey-ismail", "counterexample"}) {
    CLI::App* v = verify->add_subcommand(name);
    s_params(v);
    v->add_option("--k", o.k);
    v->add_option("--n", o.n)->check(CLI::PositiveNumber);
    v->add_option("--r", o.r)->check(CLI::NonNegativeNumber);
    v->add_option("--a", o.a);
    v->add_option("--c", o.c);
    v->add_option("--d", o.d);
    v->add_option("--cmp-rel-tol", o.cmp_rel_tol, "comparison tolerance (relative)");
    common(v);
    verifiers.emplace_back(name, v);
  }

  CLI::App* sw = app.add_subcommand("sweep", "verify S over a parameter grid");
  sw->add_option("--grid", o.grid, "grid JSON file");
  s_params(sw);
  sw->add_option("--k", ks, "k values or a..b ranges (alpha = -k)");
  sw->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
  sw->add_option("--out", o.out, "CSV output path (default stdout)");
  sw->add_option("--summary", o.summary, "JSON summary path");
  sw->add_option("--cmp-rel-tol", o.cmp_rel_tol, "comparison tolerance (relative)");
  common(sw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*pfq) return cmd_eval_pfq(out, o);
    if (*ram) return cmd_eval_ramanujan(out, o);
    for (const auto& [name, v] : verifiers)
      if (*v) return cmd_verify(out, o, name);
    if (*sw) return cmd_sweep(out, err, o, ks);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: grid: " << e.what() << '\n';
    return kUsage;
  } catch (const pole_error& e) {
    err << "pole: " << e.what() << '\n';
    return kPole;
  } catch (const indeterminate_error& e) {
    err << "pole: " << e.what() << '\n';
    return kPole;
  } catch (const divergent_error& e) {
    err << "refused: " << e.what() << '\n';
    return kDivergent;
  } catch (const no_convergence_error& e) {
    err << "no convergence: " << e.what() << " (partial sum " << e.partial_sum() << " after " << e.terms()
        << " terms)\n";
    return kDivergent;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const precision_mismatch& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const unsupported_exact_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  err << "error: no command\n";
  return kUsage;
}

}  // namespace hypersum::cli
