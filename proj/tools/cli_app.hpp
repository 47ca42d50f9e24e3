#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "haar_riesz/haar_riesz.hpp"
#include "haar_riesz/io.hpp"

namespace haar_riesz::cli {

// Stable exit-code contract.
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInputError = 2, kNumericError = 3 };

namespace detail {

using io::json;

inline Rational parse_rational_flag(const std::string& text, const char* flag) {
  try {
    return Rational::parse(text);
  } catch (const InputError& e) {
    throw InputError(std::string("--") + flag + ": " + e.what());
  }
}

/// Accepts a file of rationals (whitespace/comma separated), a range
/// "start:stop:step" (inclusive), or a comma-separated list.
inline std::vector<Rational> parse_p_list(const std::string& spec) {
  std::string text = spec;
  if (std::filesystem::is_regular_file(spec)) {
    std::ifstream in(spec);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw InputError("--p-list range must be start:stop:step");
    const Rational start = Rational::parse(parts[0]);
    const Rational stop = Rational::parse(parts[1]);
    const Rational step = Rational::parse(parts[2]);
    if (step.sign() <= 0) throw InputError("--p-list range step must be positive");
    std::vector<Rational> out;
    for (Rational p = start; p <= stop; p += step) {
      out.push_back(p);
      if (out.size() > 100000) throw InputError("--p-list range too long");
    }
    return out;
  }
  for (char& c : text) {
    if (c == ',' || c == '\n' || c == '\r' || c == '\t') c = ' ';
  }
  std::vector<Rational> out;
  std::stringstream ss(text);
  for (std::string token; ss >> token;) out.push_back(Rational::parse(token));
  if (out.empty()) throw InputError("--p-list is empty");
  return out;
}

struct Output {
  std::string path;
  std::ostream& fallback;

  void write(const std::string& text) const {
    if (path.empty()) {
      fallback << text;
      return;
    }
    std::ofstream f(path);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << text;
  }
};

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace detail

/// Runs one subcommand. Exit codes: 0 ok, 1 a checked inequality is false,
/// 2 input error, 3 eigensolver non-convergence.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using detail::json;

  CLI::App app{"Exact verification toolkit for restricted Haar systems", "haar-riesz"};
  app.require_subcommand(1, 1);
  int precision = 17;
  app.add_option("--precision", precision, "significant digits for float columns")->check(CLI::Range(1, 17));

  // gram
  auto* gram_cmd = app.add_subcommand("gram", "Gram matrix, spectral bounds and exact certificates of a family");
  std::string set_path;
  std::string p_text;
  std::string c_text;
  int depth = 0;
  bool normalized = false;
  std::string format = "json";
  std::string out_path;
  gram_cmd->add_option("--set", set_path, "step set JSON file")->required();
  gram_cmd->add_option("--p", p_text, "admissibility threshold num/den")->required();
  gram_cmd->add_option("--depth", depth, "deepest dyadic level")->required()->check(CLI::Range(0, 16));
  gram_cmd->add_option("--c", c_text, "Riesz constant to certify (default c(p) when p > 2/3)");
  gram_cmd->add_flag("--normalized", normalized, "emit the unit-norm Gram in CSV");
  gram_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  gram_cmd->add_option("--out", out_path);

  // verify-weights
  auto* weights_cmd = app.add_subcommand("verify-weights", "Exact grid verification of the weight function");
  int grid = 256;
  weights_cmd->add_option("--p", p_text)->required();
  weights_cmd->add_option("--grid", grid)->check(CLI::Range(1, 4096));
  weights_cmd->add_option("--out", out_path);

  // counterexample
  auto* counter_cmd = app.add_subcommand("counterexample", "Zig-zag table on E = [0, 2/3)");
  int n_rows = 12;
  counter_cmd->add_option("--n", n_rows)->check(CLI::Range(0, 30));
  counter_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  counter_cmd->add_option("--out", out_path);

  // constants
  auto* constants_cmd = app.add_subcommand("constants", "Riesz constants and the two-colouring comparison");
  std::string p_list;
  std::string constants_format = "csv";
  constants_cmd->add_option("--p-list", p_list, "file, start:stop:step, or comma list")->required();
  constants_cmd->add_option("--format", constants_format)->check(CLI::IsMember({"json", "csv"}));
  constants_cmd->add_option("--out", out_path);

  // search
  auto* search_cmd = app.add_subcommand("search", "Extremal search over step sets");
  SearchConfig search_cfg;
  std::string mode_text = "random";
  std::uint64_t seed = 0;
  search_cmd->add_option("--p", p_text)->required();
  search_cmd->add_option("--depth", search_cfg.depth)->check(CLI::Range(0, 16));
  search_cmd->add_option("--resolution", search_cfg.cell_resolution)->check(CLI::Range(1, 20));
  search_cmd->add_option("--iters", search_cfg.iterations)->check(CLI::PositiveNumber);
  search_cmd->add_option("--seed", seed);
  search_cmd->add_option("--mode", mode_text)->check(CLI::IsMember({"random", "greedy-flip"}));
  search_cmd->add_option("--bias-low", search_cfg.bias_low);
  search_cmd->add_option("--bias-high", search_cfg.bias_high);
  search_cmd->add_option("--restart-after", search_cfg.restart_after)->check(CLI::PositiveNumber);
  search_cmd->add_option("--out", out_path);

  // induction-check
  auto* induction_cmd = app.add_subcommand("induction-check", "Exact weighted induction and telescoping");
  std::string coeffs_path;
  induction_cmd->add_option("--set", set_path)->required();
  induction_cmd->add_option("--coeffs", coeffs_path)->required();
  induction_cmd->add_option("--p", p_text)->required();
  induction_cmd->add_option("--depth", depth)->required()->check(CLI::Range(0, 20));
  induction_cmd->add_option("--out", out_path);

  // demo-perturbation
  auto* demo_cmd = app.add_subcommand("demo-perturbation", "Small perturbation of an orthonormal set that is not Riesz");
  int demo_n = 3;
  demo_cmd->add_option("--n", demo_n)->check(CLI::Range(2, 4096));
  demo_cmd->add_option("--out", out_path);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kInputError;
  }

  const detail::Output sink{out_path, out};
  try {
    if (*gram_cmd) {
      const Rational p = detail::parse_rational_flag(p_text, "p");
      const StepSet set = io::stepset_from_json(io::read_json_file(set_path));
      const auto family = enumerate_family(depth, set, p);
      const GramMatrix gram = build_gram(family, set, normalized);
      const auto diag = gram.diagonal();

      std::optional<Rational> c;
      if (!c_text.empty()) {
        c = detail::parse_rational_flag(c_text, "c");
      } else if (Rational(2, 3) < p) {
        c = riesz_constant(p);
      }
      const bool bessel_ok = bessel_certificate(gram, p.reciprocal(), diag);
      const bool riesz_ok = !c || psd_certificate(gram, *c, diag);

      if (format == "csv") {
        sink.write(io::gram_csv(gram, precision));
      } else {
        json report = {{"p", p.str()}, {"depth", depth}, {"family_size", family.size()}, {"gram", io::to_json(gram)}};
        if (!family.empty()) {
          const auto bounds = pencil_bounds(gram);
          report["lambda_min"] = bounds.lambda_min;
          report["lambda_max"] = bounds.lambda_max;
        }
        report["bessel"] = {{"bound", p.reciprocal().str()}, {"holds", bessel_ok}};
        report["riesz"] = c ? json{{"c", c->str()}, {"holds", riesz_ok}} : json(nullptr);
        sink.write(detail::dump(report));
      }
      return bessel_ok && riesz_ok ? kOk : kCheckFailed;
    }

    if (*weights_cmd) {
      const WeightConfig cfg(detail::parse_rational_flag(p_text, "p"));
      const auto report = verify_weights(cfg, grid);
      sink.write(detail::dump(io::to_json(report)));
      return report.passed() ? kOk : kCheckFailed;
    }

    if (*counter_cmd) {
      const auto rows = counterexample_table(n_rows);
      bool ok = check_lemma_densities(n_rows);
      for (const auto& r : rows) ok = ok && r.matches_closed_form;
      if (format == "csv") {
        sink.write(io::counterexample_csv(rows, precision));
      } else {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(io::to_json(r));
        sink.write(detail::dump({{"set", io::to_json(two_thirds_set())}, {"rows", arr}}));
      }
      return ok ? kOk : kCheckFailed;
    }

    if (*constants_cmd) {
      const auto rows = comparison_table(detail::parse_p_list(p_list));
      if (constants_format == "csv") {
        sink.write(io::constants_csv(rows, precision));
      } else {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(io::to_json(r));
        sink.write(detail::dump(arr));
      }
      return kOk;
    }

    if (*search_cmd) {
      search_cfg.p = detail::parse_rational_flag(p_text, "p");
      search_cfg.seed = seed;
      search_cfg.mode = parse_search_mode(mode_text);
      const auto result = search_extremal(search_cfg);
      json report = io::to_json(result);
      report["config"] = {{"p", search_cfg.p.str()},
                          {"depth", search_cfg.depth},
                          {"resolution", search_cfg.cell_resolution},
                          {"iterations", search_cfg.iterations},
                          {"seed", search_cfg.seed},
                          {"mode", to_string(search_cfg.mode)}};
      sink.write(detail::dump(report));
      const bool ok = result.floor_violations == 0 && result.ceiling_violations == 0 && result.floor_certified;
      return ok ? kOk : kCheckFailed;
    }

    if (*induction_cmd) {
      const WeightConfig cfg(detail::parse_rational_flag(p_text, "p"));
      const StepSet set = io::stepset_from_json(io::read_json_file(set_path));
      const CoefficientMap coeffs = io::coefficients_from_json(io::read_json_file(coeffs_path));
      const auto report = telescoping_check(set, coeffs, depth, cfg);
      sink.write(detail::dump(io::to_json(report)));
      return report.all_ok() ? kOk : kCheckFailed;
    }

    if (*demo_cmd) {
      const auto demo = perturbation_demo(demo_n);
      const auto bounds = eig_bounds(perturbation_gram(demo_n));
      json report = io::to_json(demo);
      report["n"] = demo_n;
      report["lambda_min"] = bounds.lambda_min;
      report["lambda_max"] = bounds.lambda_max;
      sink.write(detail::dump(report));
      const bool ok = demo.norm_of_sum_sq.is_zero() && demo.sum_norm_sq == Rational(demo_n - 1) &&
                      demo.per_vector_perturbation == Rational(1, demo_n);
      return ok ? kOk : kCheckFailed;
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kNumericError;
  } catch (const io::json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace haar_riesz::cli
