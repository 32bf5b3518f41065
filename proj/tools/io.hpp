#pragma once

// JSON and CSV serialization for the command-line tool, and grid parsing.

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypersum/verifier.hpp"

namespace hypersum::io {

using json = nlohmann::ordered_json;

inline json to_json(const SphereValue& v) {
  json j;
  j["infinite"] = v.is_infinity();
  if (v.is_infinity()) {
    j["decimal"] = "inf";
    j["exact"] = nullptr;
  } else {
    const Scalar& s = v.value();
    j["decimal"] = s.is_exact() ? s.to_decimal(30) : s.to_string();
    j["exact"] = s.is_exact() ? json(s.to_string()) : json(nullptr);
  }
  j["tolerance_dependent"] = v.tolerance_dependent();
  return j;
}

inline json to_json(const Magnitude& m) {
  json j;
  j["exact_zero"] = m.exact_zero;
  j["value"] = m.exact ? Scalar(*m.exact).to_decimal(17) : m.to_string();
  j["exact"] = m.exact ? json(hypersum::to_string(*m.exact)) : json(nullptr);
  return j;
}

inline json to_json(const SeriesClassification& c) {
  return json{{"kind", to_string(c.kind)},
              {"k", c.k},
              {"saalschutzian", c.saalschutzian},
              {"tolerance_dependent", c.tolerance_dependent}};
}

inline json to_json(const EvalResult& r) {
  json j;
  j["value"] = to_json(r.value);
  j["terms_used"] = r.terms_used;
  j["tail_bound"] = r.tail_bound.exact_zero ? json("0") : json(Real(r.tail_bound.value, 53).to_string());
  j["method"] = to_string(r.method);
  j["classification"] = to_json(r.classification);
  j["experimental"] = r.experimental;
  return j;
}

inline json parameters_json(const std::vector<std::pair<std::string, std::string>>& params) {
  json j = json::object();
  for (const auto& [k, v] : params) j[k] = v;
  return j;
}

inline json to_json(const IdentityReport& r) {
  json j;
  j["identity"] = r.identity;
  j["parameters"] = parameters_json(r.parameters);
  j["lhs"] = r.lhs ? to_json(*r.lhs) : json(nullptr);
  j["rhs"] = r.rhs ? to_json(*r.rhs) : json(nullptr);
  j["abs_diff"] = to_json(r.abs_diff);
  j["rel_diff"] = to_json(r.rel_diff);
  j["verdict"] = to_string(r.verdict);
  j["expect_match"] = r.expect_match;
  j["unexpected"] = r.unexpected;
  j["experimental"] = r.experimental;
  j["context"] = json{{"mode", to_string(r.mode)},
                      {"precision", r.precision},
                      {"rel_tol", r.tolerances.rel},
                      {"abs_tol", r.tolerances.abs}};
  json routes = json::array();
  for (const RouteValue& rv : r.routes) {
    routes.push_back(json{{"name", rv.name},
                          {"value", rv.value ? to_json(*rv.value) : json(nullptr)},
                          {"error", rv.error.empty() ? json(nullptr) : json(rv.error)}});
  }
  j["routes"] = routes;
  j["note"] = r.note;
  j["seconds"] = r.seconds;
  return j;
}

inline json to_json(const SweepSummary& s) {
  json counts = json::object();
  for (const auto& [v, n] : s.counts) counts[to_string(v)] = n;
  return json{{"total", s.total}, {"counts", counts}, {"unexpected", s.unexpected}};
}

/// Quotes a CSV field when it contains a separator, quote or newline.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline const char* kSweepCsvHeader = "index,alpha,beta,m,z,lhs,rhs,rel_diff,verdict,unexpected";

inline void write_sweep_csv(std::ostream& os, const std::vector<GridPoint>& grid,
                            const std::vector<IdentityReport>& reports) {
  os << kSweepCsvHeader << '\n';
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const IdentityReport& r = reports[i];
    const GridPoint& g = grid[i];
    auto side = [](const std::optional<SphereValue>& v) { return v ? v->to_string() : std::string(); };
    os << g.index << ',' << csv_field(g.alpha.to_string()) << ',' << csv_field(g.beta.to_string()) << ','
       << csv_field(g.m.to_string()) << ',' << csv_field(g.z.to_string()) << ',' << csv_field(side(r.lhs)) << ','
       << csv_field(side(r.rhs)) << ',' << csv_field(r.rel_diff.to_string()) << ',' << to_string(r.verdict) << ','
       << (r.unexpected ? "true" : "false") << '\n';
  }
}

/// Parameter grid: the cartesian product alpha x (beta, m) x z. `m` entries
/// may be the token "alpha+beta+1". A random block replaces the listed
/// (beta, m) pairs with seeded random rationals.
struct GridSpec {
  Mode mode = Mode::Exact;
  long precision = 256;
  std::vector<std::string> alpha;
  std::vector<std::string> beta;
  std::vector<std::string> m;
  std::vector<std::string> z;
  struct Random {
    std::uint64_t seed = 1;
    std::size_t count = 0;
    long max_num = 9;
    long max_den = 9;
  };
  std::optional<Random> random;
};

inline constexpr const char* kAlphaBetaPlusOne = "alpha+beta+1";

/// "a..b" integer range or a single value.
inline std::vector<std::string> expand_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return {text};
  std::size_t used = 0;
  long lo = 0, hi = 0;
  try {
    lo = std::stol(text.substr(0, dots), &used);
    if (used != dots) throw parse_error("bad range start", 0);
    const std::string rest = text.substr(dots + 2);
    hi = std::stol(rest, &used);
    if (used != rest.size()) throw parse_error("bad range end", dots + 2 + used);
  } catch (const std::logic_error&) {
    throw parse_error("malformed range '" + text + "'", 0);
  }
  std::vector<std::string> out;
  for (long v = lo; v <= hi; ++v) out.push_back(std::to_string(v));
  return out;
}

inline std::vector<std::string> string_list(const json& j, const std::string& key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  const json& v = j.at(key);
  auto add = [&](const json& e) {
    if (e.is_string()) {
      for (auto& s : expand_range(e.get<std::string>())) out.push_back(s);
    } else if (e.is_number_integer()) {
      out.push_back(std::to_string(e.get<long>()));
    } else {
      throw parse_error("grid entry '" + key + "' must hold strings or integers", 0);
    }
  };
  if (v.is_array()) {
    for (const json& e : v) add(e);
  } else {
    add(v);
  }
  return out;
}

inline GridSpec parse_grid(const json& j) {
  if (!j.is_object()) throw parse_error("grid must be a JSON object", 0);
  GridSpec g;
  if (j.contains("mode")) {
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "exact") g.mode = Mode::Exact;
    else if (mode == "float") g.mode = Mode::Float;
    else throw parse_error("grid mode must be 'exact' or 'float'", 0);
  }
  if (j.contains("precision")) g.precision = j.at("precision").get<long>();
  g.alpha = string_list(j, "alpha");
  for (const std::string& k : string_list(j, "k")) {
    if (!k.empty() && k[0] == '-') throw parse_error("k must be nonnegative", 0);
    g.alpha.push_back("-" + k);
  }
  g.beta = string_list(j, "beta");
  g.m = string_list(j, "m");
  g.z = string_list(j, "z");
  if (j.contains("random")) {
    const json& r = j.at("random");
    GridSpec::Random rnd;
    rnd.seed = r.value("seed", rnd.seed);
    rnd.count = r.value("count", rnd.count);
    rnd.max_num = r.value("max_num", rnd.max_num);
    rnd.max_den = r.value("max_den", rnd.max_den);
    if (rnd.max_num < 1 || rnd.max_den < 1) throw parse_error("random max_num and max_den must be >= 1", 0);
    g.random = rnd;
  }
  return g;
}

inline GridSpec parse_grid(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return {};
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("grid JSON: ") + e.what(), e.byte);
  }
  return parse_grid(j);
}

/// Expands a grid spec into points in index order.
inline std::vector<GridPoint> build_grid(const GridSpec& spec) {
  auto parse = [&](const std::string& s) { return parse_scalar(s, spec.mode, spec.precision); };
  std::vector<std::pair<Scalar, std::optional<Scalar>>> beta_m;  // m empty: alpha+beta+1
  if (spec.random) {
    std::mt19937_64 rng(spec.random->seed);
    std::uniform_int_distribution<long> num(-spec.random->max_num, spec.random->max_num);
    std::uniform_int_distribution<long> den(1, spec.random->max_den);
    auto draw = [&] {
      Scalar q = Scalar::ratio(num(rng), den(rng));
      return spec.mode == Mode::Exact ? q : Scalar(Real(q.exact(), spec.precision));
    };
    const bool tied_m = spec.m.size() == 1 && spec.m[0] == kAlphaBetaPlusOne;
    for (std::size_t i = 0; i < spec.random->count; ++i) {
      Scalar b = draw();
      if (tied_m) beta_m.emplace_back(std::move(b), std::nullopt);
      else beta_m.emplace_back(std::move(b), draw());
    }
  } else {
    for (const std::string& b : spec.beta) {
      for (const std::string& m : spec.m) {
        if (m == kAlphaBetaPlusOne) beta_m.emplace_back(parse(b), std::nullopt);
        else beta_m.emplace_back(parse(b), parse(m));
      }
    }
  }
  std::vector<GridPoint> out;
  std::size_t index = 0;
  for (const std::string& a_text : spec.alpha) {
    const Scalar a = parse(a_text);
    for (const auto& [b, m] : beta_m) {
      const Scalar mm = m ? *m : a + b + Scalar(1);
      for (const std::string& z : spec.z) out.push_back(GridPoint{index++, a, b, mm, parse(z)});
    }
  }
  return out;
}

}  // namespace hypersum::io
