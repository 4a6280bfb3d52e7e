#include <gtest/gtest.h>

#include <set>

#include "drinfeld/registry.hpp"

using namespace drinfeld;

namespace {

// Small parameters for every id; the coverage test insists this list is complete.
const std::vector<CheckRequest>& sample_requests() {
  static const std::vector<CheckRequest> r = {
      {"moore.identity", {{"q", 2}, {"n", 2}}},
      {"moore.partial", {{"q", 2}, {"n", 2}}},
      {"moore.strata", {{"q", 2}, {"n", 2}, {"m", 2}}},
      {"cremona.graph", {{"n", 2}, {"q", 2}}},
      {"cremona.psi-squared", {{"n", 2}, {"q", 2}}},
      {"cremona.phi-bar", {{"n", 2}, {"q", 2}}},
      {"cremona.omega", {{"n", 2}, {"q", 2}, {"m", 3}}},
      {"cremona.flop", {{"q", 2}, {"m", 2}}},
      {"cremona.indeterminacy", {{"n", 2}, {"q", 2}, {"m", 2}}},
      {"foliation.bracket", {{"n", 2}, {"q", 2}}},
      {"foliation.pclosed", {{"q", 2}}},
      {"foliation.saito", {{"n", 2}, {"q", 2}}},
      {"foliation.h-identity", {{"n", 2}, {"q", 2}}},
      {"foliation.chart-form", {{"n", 2}, {"q", 2}}},
      {"foliation.chart-field", {{"n", 2}, {"q", 2}, {"j", 1}}},
      {"foliation.splitting", {{"q", 2}}},
      {"divlat.surface", {{"q", 2}}},
      {"divlat.pushforward", {{"q", 2}}},
      {"divlat.threefold", {{"q", 2}, {"p", 2}}},
      {"divlat.discrepancy", {{"m", 1}, {"d", 2}}},
      {"linsys.en-dimension", {{"n", 2}, {"c", 2}, {"q", 2}}},
      {"linsys.vanishing-zero", {{"q", 2}}},
      {"linsys.moving-singularity", {{"q", 2}, {"m", 1}}},
      {"linsys.reducibility", {{"q", 2}, {"m", 1}}},
      {"linsys.appendix", {{"d", 3}, {"s", 1}, {"q", 2}, {"points", ojson::array({{{"point", {1, 0, 0}}, {"mult", 2}}})}}},
      {"counting.strata", {{"q", 2}, {"n", 2}, {"m", 2}}},
      {"counting.flags", {{"q", 2}, {"m", 2}}},
      {"counting.b2", {{"q", 2}}},
      {"counting.incidence", {{"q", 2}}},
  };
  return r;
}

}  // namespace

TEST(Registry, IdsAreUniqueAndCovered) {
  const auto ids = check_ids();
  const std::set<std::string> unique(ids.begin(), ids.end());
  EXPECT_EQ(unique.size(), ids.size());
  std::set<std::string> sampled;
  for (const auto& r : sample_requests()) sampled.insert(r.id);
  EXPECT_EQ(sampled, unique);
}

TEST(Registry, EveryIdRunsUnderItsOwnName) {
  for (const auto& req : sample_requests()) {
    const CheckReport r = run_check(req.id, req.params);
    EXPECT_EQ(r.check_id, req.id);
    EXPECT_NE(r.status, Status::Error) << req.id << " " << r.witness.dump();
  }
}

TEST(Registry, UnknownIdNamesValidIds) {
  try {
    run_check("moore.nope", ojson::object());
    FAIL() << "expected a usage error";
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("moore.identity"), std::string::npos);
  }
}

TEST(Registry, ParameterValidation) {
  EXPECT_THROW(run_check("moore.identity", {{"q", 2}}), UsageError);
  EXPECT_THROW(run_check("moore.identity", {{"q", 6}, {"n", 2}}), UsageError);
  EXPECT_THROW(run_check("moore.identity", {{"q", 2}, {"n", 2}, {"zz", 1}}), UsageError);
  EXPECT_THROW(run_check("moore.identity", {{"q", "two"}, {"n", 2}}), UsageError);
  EXPECT_THROW(run_check("moore.identity", {{"p", 4}, {"n", 2}}), UsageError);
  EXPECT_THROW(run_check("moore.identity", {{"p", 2}, {"e", 2}, {"q", 8}, {"n", 2}}), UsageError);
}

TEST(Registry, PrimeAndExponent) {
  const CheckReport r = run_check("moore.identity", {{"p", 2}, {"e", 2}, {"n", 2}});
  EXPECT_EQ(r.status, Status::Pass);
  EXPECT_EQ(r.params["q"], 4);
}

TEST(Registry, OutOfBudgetIsAnErrorReport) {
  const CheckReport r = run_check("counting.strata", {{"q", 3}, {"n", 3}, {"m", 6}});
  EXPECT_EQ(r.status, Status::Error);
  EXPECT_TRUE(r.witness.contains("resource"));
}

TEST(Registry, EmptyBundle) {
  const ojson b = report_bundle({}, 2);
  EXPECT_EQ(b["schema"], 1);
  EXPECT_TRUE(b["reports"].is_array());
  EXPECT_TRUE(b["reports"].empty());
  EXPECT_EQ(bundle_status(b), Status::Pass);
}

TEST(Registry, BundleRejectsUnknownIdsBeforeRunning) {
  EXPECT_THROW(report_bundle({{"moore.identity", {{"q", 2}, {"n", 2}}}, {"bogus", {}}}, 1), UsageError);
}

TEST(Registry, BundleIsDeterministicAcrossWorkerCounts) {
  const auto& reqs = sample_requests();
  const ojson a = strip_runtime(report_bundle(reqs, 1));
  const ojson b = strip_runtime(report_bundle(reqs, 4));
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a["reports"].size(), reqs.size());
  for (std::size_t i = 0; i < reqs.size(); ++i) EXPECT_EQ(a["reports"][i]["check_id"], reqs[i].id);
}

TEST(Registry, BundleStatus) {
  ojson b{{"reports", ojson::array({{{"status", "PASS"}}, {{"status", "VACUOUS"}}})}};
  EXPECT_EQ(bundle_status(b), Status::Pass);
  b["reports"].push_back({{"status", "ERROR"}});
  EXPECT_EQ(bundle_status(b), Status::Error);
  b["reports"].push_back({{"status", "FAIL"}});
  EXPECT_EQ(bundle_status(b), Status::Fail);
}

TEST(Registry, RequestsFromJson) {
  const ojson cfg = ojson::parse(R"({"checks": [{"id": "counting.b2", "params": {"q": 2}}, {"id": "counting.b2", "q": 3}]})");
  const auto reqs = requests_from_json(cfg);
  ASSERT_EQ(reqs.size(), 2u);
  EXPECT_EQ(reqs[0].params["q"], 2);
  EXPECT_EQ(reqs[1].params["q"], 3);
  EXPECT_TRUE(requests_from_json(ojson::object()).empty());
  EXPECT_THROW(requests_from_json(ojson::parse(R"({"checks": [{"params": {}}]})")), UsageError);
}
