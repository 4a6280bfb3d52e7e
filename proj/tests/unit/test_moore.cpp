#include <gtest/gtest.h>

#include "drinfeld/moore.hpp"

using namespace drinfeld;

TEST(Moore, TwoVariablesCharTwo) {
  auto F = tower_for_q(2);
  const auto x = variables(F, 2);
  EXPECT_EQ(moore_det({x[0], x[1]}), x[0] * x[1].pow(2) + x[0].pow(2) * x[1]);
}

TEST(Moore, TwoVariablesCharThreeKeepsSign) {
  auto F = tower_for_q(3);
  const auto x = variables(F, 2);
  EXPECT_EQ(moore_det({x[0], x[1]}), x[0] * x[1].pow(3) - x[0].pow(3) * x[1]);
}

TEST(Moore, DegreeFormula) {
  EXPECT_EQ(moore_degree(2, 3), 7u);
  EXPECT_EQ(moore_degree(3, 3), 13u);
  EXPECT_EQ(moore_degree(4, 2), 5u);
  auto F = tower_for_q(3);
  EXPECT_EQ(moore_det(variables(F, 3)).degree(), 13);
}

TEST(Moore, ProductOfLinearFormsExact) {
  for (std::uint64_t q : {2u, 3u, 4u}) {
    auto F = tower_for_q(q);
    const auto x = variables(F, 2);
    EXPECT_EQ(moore_det(x), moore_product(x)) << "q=" << q;
  }
}

TEST(Moore, InvariantUnderElementaryColumnOperations) {
  auto F = tower_for_q(3);
  const auto x = variables(F, 3);
  const MPoly d = moore_det(x);
  for (std::uint32_t a = 1; a < 3; ++a) {
    EXPECT_EQ(moore_det({x[0] + x[2].scaled(Elem{a}), x[1], x[2]}), d);
  }
  EXPECT_EQ(moore_det({x[1], x[0], x[2]}), -d);
}

TEST(Moore, IdentityReports) {
  EXPECT_EQ(verify_moore_identity(2, 3).status, Status::Pass);
  EXPECT_EQ(verify_partial_identity(3, 2).status, Status::Pass);
}

TEST(Moore, DegreeBudgetIsAResourceError) {
  const CheckReport r = verify_moore_identity(2, 9);
  EXPECT_EQ(r.status, Status::Error);
  EXPECT_TRUE(r.witness.contains("resource"));
}

TEST(Moore, GeneratorCounts) {
  auto F = tower_for_q(2);
  EXPECT_EQ(z_c_generators(3, 2, F).size(), 4u);
  EXPECT_EQ(z_c_generators(3, 3, F).size(), 6u);
  EXPECT_EQ(subsets(4, 2).front(), (std::vector<unsigned>{0, 1}));
  EXPECT_EQ(subsets(4, 2).back(), (std::vector<unsigned>{2, 3}));
}

TEST(Moore, StratumOfPoints) {
  auto ext = tower_for_q(2, 3);
  const Elem u = ext->generator();
  EXPECT_EQ(stratum_of_point(ProjPoint(ext, {ext->one(), ext->zero(), ext->zero()})), 2u);
  EXPECT_EQ(stratum_of_point(ProjPoint(ext, {ext->one(), u, ext->zero()})), 1u);
  EXPECT_EQ(stratum_of_point(ProjPoint(ext, {ext->one(), u, ext->mul(u, u)})), 0u);
}

TEST(Moore, StrataDuality) {
  EXPECT_EQ(verify_strata_duality(2, 2, 3).status, Status::Pass);
  EXPECT_EQ(verify_strata_duality(3, 3, 2).status, Status::Pass);
}
