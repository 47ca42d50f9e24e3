#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"

namespace hr = haar_riesz;
namespace fs = std::filesystem;
using hr::io::json;

namespace {

const std::string kData = HAAR_RIESZ_DATA_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = hr::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "haar_riesz_cli_test";
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({}).code, 2);
  const auto unknown = run({"counterexample", "--bogus"});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_FALSE(unknown.err.empty());
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(Cli, CounterexampleCsv) {
  const auto r = run({"counterexample", "--n", "3", "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out), 5U);  // header + n = 0..3
  EXPECT_NE(r.out.find("4/7"), std::string::npos) << r.out;
}

TEST(Cli, CounterexampleJsonIsExact) {
  const auto r = run({"counterexample", "--n", "12"});
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  ASSERT_EQ(j.at("rows").size(), 13U);
  const auto& last = j.at("rows").back();
  EXPECT_EQ(hr::io::rational_from_json(last.at("sum_of_norms")), hr::Rational(8, 3));
  EXPECT_EQ(hr::io::rational_from_json(last.at("ratio")), hr::Rational(1, 4));
}

TEST(Cli, VerifyWeights) {
  const auto r = run({"verify-weights", "--p", "3/4", "--grid", "64"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j.at("gpos_failures").empty());
  EXPECT_TRUE(j.at("gcomp_failures").empty());
  EXPECT_EQ(j.at("C"), "16/1");
  EXPECT_EQ(run({"verify-weights", "--p", "2/3"}).code, 2);
  EXPECT_EQ(run({"verify-weights", "--p", "0.75"}).code, 2);
}

TEST(Cli, GramCertifiesDefaultConstant) {
  const auto r = run({"gram", "--set", kData + "/two_thirds.json", "--p", "3/4", "--depth", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("riesz").at("c"), "1/16");
  EXPECT_TRUE(j.at("riesz").at("holds").get<bool>());
  EXPECT_TRUE(j.at("bessel").at("holds").get<bool>());
  const auto back = hr::io::gram_from_json(j.at("gram"));
  EXPECT_EQ(back.size(), j.at("family_size").get<std::size_t>());
}

TEST(Cli, GramFailsWhenConstantTooLarge) {
  // the zig-zag subfamily pulls λ_min below 1/2 by depth 6
  const auto r = run({"gram", "--set", kData + "/two_thirds.json", "--p", "1/2", "--depth", "6", "--c", "1/2"});
  EXPECT_EQ(r.code, 1);
  const auto j = json::parse(r.out);
  EXPECT_FALSE(j.at("riesz").at("holds").get<bool>());
  EXPECT_LT(j.at("lambda_min").get<double>(), 0.5);

  const auto small = run({"gram", "--set", kData + "/two_thirds.json", "--p", "1/2", "--depth", "4", "--c", "1/100"});
  EXPECT_EQ(small.code, 0);
}

TEST(Cli, GramCsvAndNormalized) {
  const auto r = run({"gram", "--set", kData + "/full.json", "--p", "1", "--depth", "2", "--normalized", "--format",
                      "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 7U);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "1,0,0,0,0,0,0");
}

TEST(Cli, GramInputErrors) {
  EXPECT_EQ(run({"gram", "--set", "/nonexistent.json", "--p", "3/4", "--depth", "2"}).code, 2);
  const auto bad = write_temp("bad_set.json", R"({"intervals": [["1/2", "1/3"]]})");
  const auto r = run({"gram", "--set", bad, "--p", "3/4", "--depth", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("1/2"), std::string::npos) << r.err;
  const auto garbage = write_temp("garbage.json", "{not json");
  EXPECT_EQ(run({"gram", "--set", garbage, "--p", "3/4", "--depth", "2"}).code, 2);
  EXPECT_EQ(run({"gram", "--set", kData + "/full.json", "--p", "3/4", "--depth", "99"}).code, 2);
}

TEST(Cli, ConstantsCsvFromListAndRange) {
  const auto r = run({"constants", "--p-list", "9/10,3/4,4/5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 4U);
  std::istringstream in(r.out);
  std::string header;
  std::string first;
  std::getline(in, header);
  std::getline(in, first);
  EXPECT_EQ(first.substr(0, first.find(',')), "0.75");

  const auto range = run({"constants", "--p-list", "3/4:1:1/8", "--format", "json"});
  ASSERT_EQ(range.code, 0) << range.err;
  EXPECT_EQ(json::parse(range.out).size(), 3U);

  const auto file = write_temp("plist.txt", "17/24\n3/4\n");
  EXPECT_EQ(count_lines(run({"constants", "--p-list", file}).out), 3U);
  EXPECT_EQ(run({"constants", "--p-list", "0.7"}).code, 2);
  EXPECT_EQ(run({"constants", "--p-list", "2/3"}).code, 2);
}

TEST(Cli, Precision) {
  const auto r = run({"--precision", "4", "constants", "--p-list", "3/4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("0.0625"), std::string::npos) << r.out;
  EXPECT_EQ(run({"--precision", "40", "constants", "--p-list", "3/4"}).code, 2);
}

TEST(Cli, SearchDeterministic) {
  const std::vector<std::string> args{"search", "--p", "43/64", "--depth", "3", "--resolution", "4", "--iters", "6",
                                      "--seed", "11"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = json::parse(a.out);
  EXPECT_EQ(j.at("config").at("mode"), "random");
  EXPECT_EQ(j.at("history").size(), 6U);

  EXPECT_EQ(run({"search", "--p", "3/4", "--mode", "tabu"}).code, 2);
}

TEST(Cli, InductionCheck) {
  const auto coeffs = write_temp(
      "coeffs.json",
      R"({"coeffs": [{"level": 0, "index": 0, "a": "1"}, {"level": 1, "index": 0, "a": "-3/2"}, {"level": 2, "index": 0, "a": 2}]})");
  const auto r = run({"induction-check", "--set", kData + "/full.json", "--coeffs", coeffs, "--p", "3/4", "--depth",
                      "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("steps").size(), 2U);

  const auto dup = write_temp(
      "dup.json", R"({"coeffs": [{"level": 0, "index": 0, "a": "1"}, {"level": 0, "index": 0, "a": "2"}]})");
  EXPECT_EQ(run({"induction-check", "--set", kData + "/full.json", "--coeffs", dup, "--p", "3/4", "--depth", "1"}).code,
            2);
  // [1/2,1) has density 1/3 in [0,2/3)
  const auto inadmissible = write_temp("inadmissible.json", R"({"coeffs": [{"level": 1, "index": 1, "a": "1"}]})");
  EXPECT_EQ(run({"induction-check", "--set", kData + "/two_thirds.json", "--coeffs", inadmissible, "--p", "3/4",
                 "--depth", "1"})
                .code,
            2);
}

TEST(Cli, DemoPerturbation) {
  const auto r = run({"demo-perturbation", "--n", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("norm_of_sum_sq"), "0/1");
  EXPECT_EQ(j.at("sum_norm_sq"), "2/1");
  EXPECT_NEAR(j.at("lambda_min").get<double>(), 0.0, 1e-10);
  EXPECT_EQ(run({"demo-perturbation", "--n", "1"}).code, 2);
}

TEST(Cli, OutFile) {
  const auto path = (fs::temp_directory_path() / "haar_riesz_cli_test" / "table.csv").string();
  fs::create_directories(fs::path(path).parent_path());
  const auto r = run({"counterexample", "--n", "2", "--format", "csv", "--out", path});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(count_lines(ss.str()), 4U);
}
