#include <gtest/gtest.h>

#include "drinfeld/cremona.hpp"
#include "drinfeld/moore.hpp"

using namespace drinfeld;

TEST(Cremona, PsiComponentsCharTwo) {
  auto F = tower_for_q(2);
  const RationalMap psi = psi_map(2, F);
  const auto x = variables(F, 3);
  ASSERT_EQ(psi.size(), 3u);
  EXPECT_EQ(psi.components()[0], x[1] * x[2].pow(2) + x[1].pow(2) * x[2]);
  EXPECT_EQ(psi.components()[1], x[0] * x[2].pow(2) + x[0].pow(2) * x[2]);
  EXPECT_EQ(psi.components()[2], x[0] * x[1].pow(2) + x[0].pow(2) * x[1]);
}

TEST(Cremona, PsiOnTheLine) {
  auto F = tower_for_q(3);
  const RationalMap psi = psi_map(1, F);
  const auto x = variables(F, 2);
  EXPECT_EQ(psi.degree(), 1);
  EXPECT_EQ(psi.components()[0], x[1]);
  EXPECT_EQ(psi.components()[1], -x[0]);
}

TEST(Cremona, PsiDegreeThreeSpace) {
  const RationalMap psi = psi_map(3, tower_for_q(2));
  EXPECT_EQ(psi.size(), 4u);
  EXPECT_EQ(psi.degree(), 7);
}

TEST(Cremona, ProjEqualWitness) {
  auto F = tower_for_q(3);
  const auto x = variables(F, 2);
  const RationalMap f({x[0], x[1]});
  const RationalMap g({x[1], x[0]});
  const CheckReport r = proj_equal(f, g);
  EXPECT_EQ(r.status, Status::Fail);
  EXPECT_EQ(r.witness["minor"], (x[0].pow(2) - x[1].pow(2)).to_string());
  const RationalMap hf({x[0] * (x[0] + x[1]), x[1] * (x[0] + x[1])});
  EXPECT_TRUE(proj_equal(f, hf).passed());
  const RationalMap cf({x[0].scaled(F->from_int(2)), x[1].scaled(F->from_int(2))});
  EXPECT_TRUE(proj_equal(f, cf).passed());
}

TEST(Cremona, IndeterminateAtRationalPoint) {
  auto F = tower_for_q(2);
  const ProjPoint pt(F, {F->one(), F->zero(), F->zero()});
  EXPECT_THROW(apply(psi_map(2, F), pt), IndeterminacyError);
}

TEST(Cremona, FrobeniusAndPsiOverF8) {
  auto base = tower_for_q(2);
  auto ext = tower_for_q(2, 3);
  const Elem u = ext->generator();
  const ProjPoint pt(ext, {ext->one(), u, ext->mul(u, u)});
  const ProjPoint fr = apply(frobenius_map(2, base, 1), pt);
  EXPECT_EQ(fr, ProjPoint(ext, {ext->one(), ext->pow(u, 2), ext->pow(u, 4)}));
  const ProjPoint img = apply(psi_map(2, base), pt);
  const MPoly delta = moore_det(variables(base, 3));
  EXPECT_FALSE(evaluate(delta, img.coords(), *ext).is_zero());
}

TEST(Cremona, ComposeWithIdentity) {
  auto F = tower_for_q(2);
  const RationalMap psi = psi_map(2, F);
  const RationalMap id = frobenius_map(2, F, 0);
  EXPECT_TRUE(proj_equal(compose(psi, id), psi).passed());
  EXPECT_TRUE(proj_equal(compose(id, psi), psi).passed());
}

TEST(Cremona, SmallChecks) {
  EXPECT_TRUE(verify_graph_relations(2, 2).passed());
  EXPECT_TRUE(verify_phi_bar(2, 2).passed());
  const CheckReport sq = verify_psi_squared(2, 2);
  EXPECT_TRUE(sq.passed());
  EXPECT_EQ(sq.data["common_factor_degree"], 7);
  EXPECT_EQ(sq.data["zero_set_matches_rational_hyperplanes"], true);
}

TEST(Cremona, OmegaVacuousBelowThreshold) {
  const CheckReport r = verify_omega_endomorphism(2, 2, 2);
  EXPECT_EQ(r.status, Status::Vacuous);
  EXPECT_EQ(r.data["points_scanned"], 21);
  EXPECT_EQ(r.data["omega_count"], 0);
}

TEST(Cremona, OmegaOverF8) {
  const CheckReport r = verify_omega_endomorphism(2, 2, 3);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.data["omega_count"], 24);
}

TEST(Cremona, FlopAndIndeterminacy) {
  EXPECT_TRUE(flop_local_model(2, 3).passed());
  EXPECT_TRUE(flop_local_model(3, 2).passed());
  EXPECT_TRUE(verify_indeterminacy(2, 2, 2).passed());
}
