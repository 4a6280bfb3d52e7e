#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "drinfeld_cli/cli.hpp"

using namespace drinfeld;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  ojson json() const { return ojson::parse(out); }
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("drinfeld_cli_test_" + name);
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, VerifyAllSmall) {
  const Result r = run_cli({"verify", "all", "--q", "2", "--n", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_GT(r.json()["reports"].size(), 10u);
}

TEST(Cli, VerifyPsiSquaredByShortName) {
  const Result r = run_cli({"verify", "psi-squared", "--q", "2", "--n", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["reports"][0]["check_id"], "cremona.psi-squared");
}

TEST(Cli, SplittingAtTwoCarriesNoneWitness) {
  const Result r = run_cli({"verify", "foliation", "--check", "splitting", "--q", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  const ojson rep = r.json()["reports"][0];
  EXPECT_EQ(rep["status"], "PASS");
  EXPECT_EQ(rep["witness"]["exists"], false);
  EXPECT_EQ(rep["witness"]["candidates"], 64);
}

TEST(Cli, FailingCheckExitsOne) {
  const Result r = run_cli({"verify", "h-identity", "--q", "3", "--n", "2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.json()["reports"][0]["status"], "FAIL");
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "no-such-check", "--q", "2"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "psi-squared", "--q", "6", "--n", "2"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "psi-squared", "--q", "2"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "foliation", "--check", "nope", "--q", "2"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "lattice", "--scope", "fourfold", "--q", "2"}).code, 2);
  EXPECT_EQ(run_cli({"count", "b2", "--q", "2", "--format", "xml"}).code, 2);
  const Result r = run_cli({"verify", "no-such-check", "--q", "2"});
  EXPECT_NE(r.err.find("valid ids"), std::string::npos);
}

TEST(Cli, PrimeAndExponentFlags) {
  const Result r = run_cli({"verify", "moore.identity", "--p", "2", "--e", "2", "--n", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["reports"][0]["params"]["q"], 4);
}

TEST(Cli, LatticeScopes) {
  const Result s = run_cli({"verify", "lattice", "--q", "2", "--scope", "surface"});
  EXPECT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(s.json()["reports"].size(), 2u);
  const Result t = run_cli({"verify", "lattice", "--q", "2", "--scope", "threefold"});
  EXPECT_EQ(t.code, 0) << t.err;
  EXPECT_EQ(t.json()["reports"][0]["data"]["slope_c1L.H^2"], "8");
}

TEST(Cli, MapApply) {
  const Result r = run_cli({"map", "apply", "--q", "2", "--m", "3", "--point", "[1, [0,1,0], [0,0,1]]"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["image"].size(), 3u);
  const Result rational = run_cli({"map", "apply", "--q", "2", "--point", "[1, 0, 0]"});
  EXPECT_EQ(rational.code, 0) << rational.err;
  EXPECT_EQ(rational.json()["indeterminate"], true);
  EXPECT_EQ(run_cli({"map", "apply", "--q", "2", "--n", "3", "--point", "[1, 0, 0]"}).code, 2);
}

TEST(Cli, LinsysSubcommands) {
  const Result dim = run_cli({"linsys", "dim", "--n", "3", "--c", "2", "--q", "2"});
  EXPECT_EQ(dim.code, 0) << dim.err;
  EXPECT_EQ(dim.json()["reports"][0]["data"]["dimension"], 4);
  const Result serre = run_cli({"linsys", "serre", "--q", "2", "--m", "1"});
  EXPECT_EQ(serre.code, 0) << serre.err;
  EXPECT_EQ(serre.json()["reports"].size(), 2u);
}

TEST(Cli, AppendixFromPointsFile) {
  const auto pts = temp_file("points.json", R"([{"point": [1, 0, 0], "mult": 2}])");
  const Result r = run_cli({"linsys", "appendix", "--d", "3", "--s", "1", "--q", "2", "--points-file", pts.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  const ojson data = r.json()["reports"][0]["data"];
  EXPECT_EQ(data["h0_actual"], 2);
  EXPECT_EQ(data["chi"], 2);
  EXPECT_EQ(data["h1"], 0);
  const Result empty = run_cli({"linsys", "appendix", "--d", "3", "--s", "2", "--q", "2"});
  EXPECT_EQ(empty.code, 0) << empty.err;
  EXPECT_EQ(empty.json()["reports"][0]["data"]["h0_actual"], 6);
}

TEST(Cli, CountCsv) {
  const Result r = run_cli({"count", "strata", "--q", "2", "--n", "2", "--m", "2", "--format", "csv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("check_id,status,key,value\n", 0), 0u);
  EXPECT_NE(r.out.find("counting.strata,PASS,stratum_counts,\"[0,14,7]\""), std::string::npos);
}

TEST(Cli, ReportFromTomlAndJsonAgree) {
  const auto toml = temp_file("cfg.toml", "[[checks]]\nid = \"counting.b2\"\nparams = { q = 2 }\n"
                                          "[[checks]]\nid = \"divlat.discrepancy\"\nparams = { m = 2, d = 2 }\n");
  const auto json = temp_file("cfg.json", R"({"checks": [{"id": "counting.b2", "params": {"q": 2}},
                                                         {"id": "divlat.discrepancy", "params": {"m": 2, "d": 2}}]})");
  const Result a = run_cli({"report", "--config", toml.string()});
  const Result b = run_cli({"report", "--config", json.string()});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(strip_runtime(a.json()).dump(), strip_runtime(b.json()).dump());
}

TEST(Cli, EmptyConfigGivesEmptyReports) {
  const auto cfg = temp_file("empty.toml", "");
  const Result r = run_cli({"report", "--config", cfg.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.json()["reports"].empty());
}

TEST(Cli, OutOfBudgetConfigGivesErrorReport) {
  const auto cfg = temp_file("big.json", R"([{"id": "moore.identity", "params": {"q": 2, "n": 9}}])");
  const Result r = run_cli({"report", "--config", cfg.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.json()["reports"][0]["status"], "ERROR");
  EXPECT_TRUE(r.json()["reports"][0]["witness"].contains("resource"));
}

TEST(Cli, BudgetFlagCapsEnumeration) {
  const Result r = run_cli({"count", "strata", "--q", "2", "--n", "2", "--m", "3", "--budget", "50"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.json()["reports"][0]["status"], "ERROR");
  const Result ok = run_cli({"count", "strata", "--q", "2", "--n", "2", "--m", "3"});
  EXPECT_EQ(ok.code, 0);
}

TEST(Cli, OutFlagWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "drinfeld_cli_test_out.json";
  std::filesystem::remove(path);
  const Result r = run_cli({"count", "b2", "--q", "2", "--out", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  EXPECT_EQ(ojson::parse(in)["reports"][0]["data"]["b2"], 51);
}

TEST(Cli, ShippedAcceptanceConfigLoads) {
  const auto reqs = cli::load_config(std::filesystem::path(DRINFELD_SOURCE_DIR) / "config" / "acceptance.toml");
  EXPECT_GT(reqs.size(), 50u);
  for (const auto& r : reqs) EXPECT_NO_THROW(check_info(r.id));
}
