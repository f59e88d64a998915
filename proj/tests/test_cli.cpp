#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "filtropt/cli.hpp"

using namespace filtropt;
using namespace filtropt::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const RunConfig& cfg) {
  std::ostringstream out, err;
  const int code = dispatch(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config(Subcommand sub, int L, int k = 0) {
  RunConfig cfg;
  cfg.subcommand = sub;
  cfg.L = L;
  cfg.k = k;
  return cfg;
}

// CSV "field,value" body back into (path, value) pairs.
std::vector<std::pair<std::string, std::string>> parse_field_csv(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "field,value");
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    std::string value = line.substr(comma + 1);
    if (value.size() >= 2 && value.front() == '"') {
      std::string unq;
      for (std::size_t i = 1; i + 1 < value.size(); ++i) {
        unq += value[i];
        if (value[i] == '"') ++i;
      }
      value = unq;
    }
    out.emplace_back(line.substr(0, comma), value);
  }
  return out;
}

}  // namespace

TEST(Cli, ProbHeadlineAssertion) {
  auto cfg = config(Subcommand::prob, 257, 128);
  cfg.assert_min = 0.998;
  const auto o = run(cfg);
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto j = Json::parse(o.out);
  EXPECT_EQ(j["mode"], "log-domain");
  EXPECT_TRUE(j["assertion"]["holds"].get<bool>());
  EXPECT_EQ(j["bound_asymptotic"].get<std::string>().substr(0, 10), "0.99805636");
  EXPECT_EQ(j["nfm"], nullptr);

  cfg.assert_min = 0.999;
  const auto fail = run(cfg);
  EXPECT_EQ(fail.code, kExitComparison);
  EXPECT_FALSE(Json::parse(fail.out)["assertion"]["holds"].get<bool>());
}

TEST(Cli, ProbExactFields) {
  const auto o = run(config(Subcommand::prob, 5, 2));
  ASSERT_EQ(o.code, kExitOk);
  const auto j = Json::parse(o.out);
  EXPECT_EQ(j["pr_exact"], "961/1056");  // lowest terms
  EXPECT_EQ(j["nfm"], "29791");
  EXPECT_EQ(j["nfk"], "32736");
  EXPECT_EQ(j["exceeds_bound_general"], false);
  EXPECT_EQ(j["exceeds_bound_product"], true);
  auto exact = config(Subcommand::prob, 257, 128);
  exact.exact = true;
  const auto e = run(exact);
  EXPECT_EQ(e.code, kExitValidation);
  EXPECT_NE(e.err.find("--exact"), std::string::npos);
}

TEST(Cli, AnalyzeIdentityFilter) {
  auto cfg = config(Subcommand::analyze, 3);
  cfg.filter_anf = "x0";
  const auto o = run(cfg);
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto j = Json::parse(o.out);
  EXPECT_EQ(j["lc_bm"], 3);
  EXPECT_EQ(j["lc_spectral"], 3);
  EXPECT_EQ(j["period_measured"], 7);
  EXPECT_EQ(j["period_spectral"], 7);
  EXPECT_EQ(j["lines"].size(), 1U);
  EXPECT_EQ(j["lines"][0]["leader"], 1);
  EXPECT_TRUE(j["subfield_ok"].get<bool>());
  EXPECT_TRUE(j["optimal"].get<bool>());
}

TEST(Cli, AnalyzeWithExplicitPolyAndState) {
  auto cfg = config(Subcommand::analyze, 5);
  cfg.filter_anf = "x0*x1 + x2";
  cfg.poly = "0x29";
  cfg.factors = "31";
  cfg.seed_state = "0x13";
  const auto o = run(cfg);
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto j = Json::parse(o.out);
  EXPECT_EQ(j["poly"], "0x29");
  EXPECT_EQ(j["lc_bm"], j["lc_spectral"]);
}

TEST(Cli, ValidationErrorsNameTheFlag) {
  auto unknown = config(Subcommand::analyze, 40);
  unknown.filter_anf = "x0";
  auto o = run(unknown);
  EXPECT_EQ(o.code, kExitValidation);
  EXPECT_NE(o.err.find("--length"), std::string::npos);

  auto nonprim = config(Subcommand::analyze, 4);
  nonprim.filter_anf = "x0";
  nonprim.poly = "0x1f";
  o = run(nonprim);
  EXPECT_EQ(o.code, kExitValidation);
  EXPECT_NE(o.err.find("--poly"), std::string::npos);
  EXPECT_NE(o.err.find("not primitive"), std::string::npos);
  const std::string nonprim_err = o.err;

  auto bad_anf = config(Subcommand::analyze, 4);
  bad_anf.filter_anf = "x0 + + x1";
  o = run(bad_anf);
  EXPECT_EQ(o.code, kExitValidation);
  EXPECT_NE(o.err.find("--filter"), std::string::npos);
  EXPECT_NE(o.err, nonprim_err);

  auto tap = config(Subcommand::analyze, 4);
  tap.filter_anf = "x7";
  o = run(tap);
  EXPECT_NE(o.err.find("--filter"), std::string::npos);
  EXPECT_NE(o.err.find("x7"), std::string::npos);

  auto no_factors = config(Subcommand::analyze, 4);
  no_factors.filter_anf = "x0";
  no_factors.poly = "0x13";
  no_factors.factors = "3,7";
  o = run(no_factors);
  EXPECT_EQ(o.code, kExitValidation);
  EXPECT_NE(o.err.find("--factors"), std::string::npos);

  auto order = config(Subcommand::prob, 5, 9);
  o = run(order);
  EXPECT_EQ(o.code, kExitValidation);
  EXPECT_NE(o.err.find("--order"), std::string::npos);

  auto trials = config(Subcommand::sample, 5, 2);
  trials.trials = 0;
  o = run(trials);
  EXPECT_EQ(o.code, kExitValidation);
  EXPECT_NE(o.err.find("--trials"), std::string::npos);

  auto bits = config(Subcommand::lc, 0);
  bits.bits = "0102";
  o = run(bits);
  EXPECT_EQ(o.code, kExitValidation);
  EXPECT_NE(o.err.find("--bits"), std::string::npos);
}

TEST(Cli, EnumerateCensus) {
  auto cfg = config(Subcommand::enumerate, 5, 2);
  cfg.jobs = 3;
  const auto o = run(cfg);
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto j = Json::parse(o.out);
  EXPECT_EQ(j["trials"], 32736);
  EXPECT_EQ(j["hits_max_lc"], 29791);
  EXPECT_EQ(j["verdict"]["exact_match"], true);
  EXPECT_EQ(j["verdict"]["passed"], true);
  auto big = config(Subcommand::enumerate, 7, 3);
  const auto refused = run(big);
  EXPECT_EQ(refused.code, kExitValidation);
  EXPECT_NE(refused.err.find("cap"), std::string::npos);
}

TEST(Cli, SampleOutputIndependentOfJobs) {
  auto one = config(Subcommand::sample, 7, 3);
  one.trials = 2000;
  one.seed = 5;
  auto four = one;
  four.jobs = 4;
  const auto a = run(one), b = run(four);
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(Json::parse(a.out)["seed"], 5);
}

TEST(Cli, TrialCsvMatchesSummary) {
  const auto path = std::filesystem::temp_directory_path() / "filtropt_trials.csv";
  auto cfg = config(Subcommand::sample, 5, 2);
  cfg.trials = 300;
  cfg.csv_path = path.string();
  const auto o = run(cfg);
  ASSERT_EQ(o.code, kExitOk) << o.err;
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "filter_anf,lc,period,is_max");
  std::uint64_t rows = 0, max_rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    if (line.ends_with(",1")) ++max_rows;
  }
  const auto j = Json::parse(o.out);
  EXPECT_EQ(rows, 300U);
  EXPECT_EQ(max_rows, j["hits_max_lc"].get<std::uint64_t>());
  std::filesystem::remove(path);
}

TEST(Cli, CsvAndHumanCarryTheJsonContent) {
  for (auto sub : {Subcommand::prob, Subcommand::enumerate, Subcommand::analyze, Subcommand::lc}) {
    auto cfg = config(sub, 5, 2);
    cfg.filter_anf = "x0*x1 + x3";
    cfg.bits = "0010111";
    const auto json = run(cfg);
    ASSERT_EQ(json.code, kExitOk) << json.err;
    const auto expected = flatten_report(Json::parse(json.out));
    cfg.output = OutputFormat::csv;
    EXPECT_EQ(parse_field_csv(run(cfg).out), expected);
    cfg.output = OutputFormat::human;
    const auto human = run(cfg).out;
    for (const auto& [path, value] : expected) EXPECT_NE(human.find(path), std::string::npos) << path;
  }
}

TEST(Cli, CosetsTable) {
  auto cfg = config(Subcommand::cosets, 4, 2);
  const auto j = Json::parse(run(cfg).out);
  EXPECT_EQ(j["n_cosets"], 3);
  EXPECT_EQ(j["nk"], "10");
  EXPECT_EQ(j["cosets"][2]["cardinal"], 2);
  EXPECT_EQ(j["cosets"][2]["period"], 3);
  cfg.output = OutputFormat::csv;
  EXPECT_EQ(run(cfg).out, "leader,cardinal,weight,period\n1,4,1,15\n3,4,2,5\n5,2,2,3\n");
}

TEST(Cli, TableOverrideThroughEnvironment) {
  const auto path = std::filesystem::temp_directory_path() / "filtropt_cli_table.txt";
  {
    std::ofstream out(path);
    out << "5 0x29 31\n";
  }
  ::setenv("FILTROPT_POLY_TABLE", path.c_str(), 1);
  auto cfg = config(Subcommand::analyze, 5);
  cfg.filter_anf = "x0";
  const auto o = run(cfg);
  ::unsetenv("FILTROPT_POLY_TABLE");
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_EQ(Json::parse(o.out)["poly"], "0x29");
  std::filesystem::remove(path);
}
