#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "haar_riesz/constants.hpp"
#include "haar_riesz/counterexample.hpp"
#include "haar_riesz/errors.hpp"
#include "haar_riesz/gram.hpp"
#include "haar_riesz/haar.hpp"
#include "haar_riesz/measure.hpp"
#include "haar_riesz/rational.hpp"
#include "haar_riesz/search.hpp"
#include "haar_riesz/weights.hpp"

namespace haar_riesz::io {

using nlohmann::json;

/// Round-trip float rendering (17 significant digits by default).
inline std::string format_double(double value, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

inline json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InputError("expected a rational as \"num/den\", got " + j.dump());
}

inline json to_json(const DyadicInterval& i) { return {{"level", i.level}, {"index", i.index}}; }

inline DyadicInterval interval_from_json(const json& j) {
  if (!j.is_object() || !j.contains("level") || !j.contains("index")) {
    throw InputError("dyadic interval needs \"level\" and \"index\": " + j.dump());
  }
  const long level = j.at("level").get<long>();
  const long long index = j.at("index").get<long long>();
  if (level < 0 || index < 0) throw InputError("dyadic interval with negative field: " + j.dump());
  return {static_cast<int>(level), static_cast<std::uint64_t>(index)};
}

// {"intervals": [["0/1","2/3"], ...]}
inline json to_json(const StepSet& set) {
  json pieces = json::array();
  for (const auto& [l, r] : set.intervals()) pieces.push_back({l.str(), r.str()});
  return {{"intervals", pieces}};
}

inline StepSet stepset_from_json(const json& j) {
  if (!j.is_object() || !j.contains("intervals") || !j.at("intervals").is_array()) {
    throw InputError("step set JSON needs an \"intervals\" array");
  }
  std::vector<StepSet::Piece> raw;
  for (const auto& piece : j.at("intervals")) {
    if (!piece.is_array() || piece.size() != 2) throw InputError("interval must be a [left, right] pair: " + piece.dump());
    raw.emplace_back(rational_from_json(piece[0]), rational_from_json(piece[1]));
  }
  return StepSet::normalize(std::move(raw));
}

// {"coeffs": [{"level":0,"index":0,"a":"1/1"}, ...]}
inline json to_json(const CoefficientMap& coeffs) {
  json arr = json::array();
  for (const auto& [interval, a] : coeffs.entries()) {
    arr.push_back({{"level", interval.level}, {"index", interval.index}, {"a", a.str()}});
  }
  return {{"coeffs", arr}};
}

inline CoefficientMap coefficients_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_array()) {
    throw InputError("coefficient JSON needs a \"coeffs\" array");
  }
  CoefficientMap out;
  for (const auto& entry : j.at("coeffs")) {
    if (!entry.contains("a")) throw InputError("coefficient entry without \"a\": " + entry.dump());
    const DyadicInterval interval = interval_from_json(entry);
    if (!out.get(interval).is_zero()) throw InputError("duplicate coefficient for " + interval.str());
    out.set(interval, rational_from_json(entry.at("a")));
  }
  return out;
}

inline json to_json(const GramMatrix& gram) {
  json labels = json::array();
  for (const auto& l : gram.labels()) labels.push_back(to_json(l));
  json rows = json::array();
  for (std::size_t i = 0; i < gram.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < gram.size(); ++j) row.push_back(gram(i, j).str());
    rows.push_back(std::move(row));
  }
  return {{"size", gram.size()}, {"labels", labels}, {"normalized", gram.normalized()}, {"entries", rows}};
}

inline GramMatrix gram_from_json(const json& j) {
  const auto m = j.at("size").get<std::size_t>();
  std::vector<DyadicInterval> labels;
  for (const auto& l : j.value("labels", json::array())) labels.push_back(interval_from_json(l));
  const auto& rows = j.at("entries");
  if (rows.size() != m) throw InputError("gram JSON: row count does not match size");
  std::vector<Rational> entries;
  entries.reserve(m * m);
  for (const auto& row : rows) {
    if (row.size() != m) throw InputError("gram JSON: ragged row");
    for (const auto& e : row) entries.push_back(rational_from_json(e));
  }
  return {m, std::move(entries), std::move(labels), j.value("normalized", false)};
}

/// Float view of the matrix, one row per line.
inline std::string gram_csv(const GramMatrix& gram, int digits = 17) {
  const auto values = gram.to_float();
  std::ostringstream os;
  for (std::size_t i = 0; i < gram.size(); ++i) {
    for (std::size_t j = 0; j < gram.size(); ++j) {
      if (j) os << ',';
      os << format_double(values[i * gram.size() + j], digits);
    }
    os << '\n';
  }
  return os.str();
}

inline json to_json(const CounterexampleRow& row) {
  return {{"n", row.n},
          {"sum_of_norms", row.sum_of_norms.str()},
          {"norm_of_sum", row.norm_of_sum.str()},
          {"ratio", row.ratio.str()},
          {"sum_of_norms_float", row.sum_of_norms.to_double()},
          {"norm_of_sum_float", row.norm_of_sum.to_double()},
          {"ratio_float", row.ratio.to_double()},
          {"matches_closed_form", row.matches_closed_form}};
}

inline std::string counterexample_csv(const std::vector<CounterexampleRow>& rows, int digits = 17) {
  std::ostringstream os;
  os << "n,sum_of_norms,norm_of_sum,ratio,sum_of_norms_float,norm_of_sum_float,ratio_float,matches_closed_form\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.sum_of_norms << ',' << r.norm_of_sum << ',' << r.ratio << ','
       << format_double(r.sum_of_norms.to_double(), digits) << ',' << format_double(r.norm_of_sum.to_double(), digits)
       << ',' << format_double(r.ratio.to_double(), digits) << ',' << (r.matches_closed_form ? "true" : "false")
       << '\n';
  }
  return os.str();
}

inline json to_json(const WeightsReport& report) {
  json gpos = json::array();
  for (const auto& [q1, q2] : report.gpos_failures) gpos.push_back({q1.str(), q2.str()});
  json gcomp = json::array();
  for (const auto& q : report.gcomp_failures) gcomp.push_back(q.str());
  return {{"p", report.p.str()},
          {"grid_step", report.grid_step.str()},
          {"gpos_failures", gpos},
          {"gcomp_failures", gcomp},
          {"C", report.C.str()},
          {"g_at_2p_minus_1",
           {{"holds", report.branch.holds},
            {"g", report.branch.g_value.str()},
            {"g_tilde", report.branch.g_tilde_value.str()}}},
          {"pairs_checked_all_a", report.pairs_checked},
          {"pairs_checked_convexity", report.convexity_checked}};
}

inline json to_json(const ConstantsReport& r) {
  json out = {{"p", r.p.str()},
              {"c_weighted", r.c.str()},
              {"c_weighted_float", r.c.to_double()},
              {"C", r.C.str()},
              {"c_asymptotic", r.asymptotic},
              {"c_sharp_conjectured", r.sharp_conjectured}};
  out["c_bcms"] = r.bcms ? json(*r.bcms) : json(nullptr);
  return out;
}

/// p, c_weighted, c_asymptotic, c_sharp_conjectured, c_bcms (blank when p <= 3/4),
/// then the exact p and c_weighted.
inline std::string constants_csv(const std::vector<ConstantsReport>& rows, int digits = 17) {
  std::ostringstream os;
  os << "p,c_weighted,c_asymptotic,c_sharp_conjectured,c_bcms,p_exact,c_weighted_exact\n";
  for (const auto& r : rows) {
    os << format_double(r.p.to_double(), digits) << ',' << format_double(r.c.to_double(), digits) << ','
       << format_double(r.asymptotic, digits) << ',' << format_double(r.sharp_conjectured, digits) << ','
       << (r.bcms ? format_double(*r.bcms, digits) : std::string()) << ',' << r.p << ',' << r.c << '\n';
  }
  return os.str();
}

inline json to_json(const SearchResult& r) {
  json history = json::array();
  for (const auto& [it, ratio] : r.history) history.push_back({it, ratio});
  json out = {{"best_set", to_json(r.best_set)},
              {"best_ratio", r.best_ratio},
              {"best_lambda_max", r.best_lambda_max},
              {"family_size", r.family_size},
              {"certificate_lower", r.certificate_lower.str()},
              {"floor_certified", r.floor_certified},
              {"floor_violations", r.floor_violations},
              {"ceiling_violations", r.ceiling_violations},
              {"evaluations", r.evaluations},
              {"history", history}};
  out["riesz_floor"] = r.riesz_floor ? json(r.riesz_floor->str()) : json(nullptr);
  return out;
}

inline json to_json(const StepCheck& s) {
  return {{"holds", s.holds}, {"lhs", s.lhs.str()}, {"rhs", s.rhs.str()}};
}

inline json to_json(const TelescopeReport& r) {
  json steps = json::array();
  for (std::size_t n = 0; n < r.steps.size(); ++n) {
    json s = to_json(r.steps[n]);
    s["n"] = n;
    steps.push_back(std::move(s));
  }
  return {{"base", to_json(r.base)},
          {"steps", steps},
          {"weighted_norm", r.weighted_norm.str()},
          {"sum_of_norms", r.sum_of_norms.str()},
          {"plain_norm", r.plain_norm.str()},
          {"C", r.C.str()},
          {"steps_hold", r.steps_hold},
          {"telescopes", r.telescopes},
          {"weighted_bound", r.weighted_bound},
          {"unweighted_bound", r.unweighted_bound},
          {"riesz_bound", r.riesz_bound}};
}

inline json to_json(const PerturbationDemo& d) {
  return {{"sum_norm_sq", d.sum_norm_sq.str()},
          {"norm_of_sum_sq", d.norm_of_sum_sq.str()},
          {"per_vector_perturbation", d.per_vector_perturbation.str()}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("invalid JSON in '" + path + "': " + e.what());
  }
}

}  // namespace haar_riesz::io
