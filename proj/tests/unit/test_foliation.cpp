#include <gtest/gtest.h>

#include <random>

#include "drinfeld/cremona.hpp"
#include "drinfeld/foliation.hpp"
#include "drinfeld/moore.hpp"

using namespace drinfeld;

TEST(Foliation, BracketDiagonalIsZero) {
  auto F = tower_for_q(3);
  const Derivation t = chart_theta(F, 2, 1);
  EXPECT_EQ(lie_bracket(t, t), Derivation::zero(F, 2));
  EXPECT_TRUE(verify_bracket_identity(2, 2, 1, 2).passed());
  EXPECT_TRUE(verify_bracket_identity(3, 3, 1, 2).passed());
}

TEST(Foliation, BracketAllPairs) {
  for (auto [n, q] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}, {3u, 3u}}) {
    EXPECT_TRUE(verify_bracket_all(n, q).passed()) << n << " " << q;
  }
}

TEST(Foliation, PClosed) {
  EXPECT_TRUE(verify_p_closed(2, 2).passed());
  EXPECT_TRUE(verify_p_closed(3, 2).passed());
  const CheckReport r = verify_p_closed(4, 3);
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.data.contains("note"));
}

TEST(Foliation, SaitoOnTheLine) {
  auto F = tower_for_q(2);
  const auto x = variables(F, 2);
  PolyMatrix m(2);
  for (unsigned i = 0; i < 2; ++i) {
    for (unsigned j = 0; j < 2; ++j) m[i].push_back(cone_theta(F, 1, i).apply(x[j]));
  }
  EXPECT_EQ(det_poly_matrix(m), x[0] * x[1].pow(2) + x[0].pow(2) * x[1]);
  EXPECT_EQ(det_poly_matrix(m), x[0] * x[1] * (x[0] + x[1]));
  EXPECT_TRUE(saito_log_tangent_check(2, 2).passed());
  EXPECT_TRUE(saito_log_tangent_check(2, 3).passed());
}

TEST(Foliation, HIdentityCharTwo) {
  EXPECT_TRUE(verify_h_identity(1, 2).passed());
  EXPECT_TRUE(verify_h_identity(2, 2).passed());
  EXPECT_TRUE(verify_h_identity(3, 2).passed());
}

TEST(Foliation, HIdentityOddCharacteristicSign) {
  // h_1 s_1 = s_1 - s_1^3 while Delta_3(1, s_1) = s_1^3 - s_1.
  const CheckReport r = verify_h_identity(1, 3);
  EXPECT_EQ(r.status, Status::Fail);
  EXPECT_EQ(r.witness["ratio"], "-1");
  auto F = tower_for_q(3);
  const MPoly s = MPoly::variable(F, 1, 0);
  EXPECT_EQ(h_polynomial(F, 1, 1) * s, s - s.pow(3));
}

TEST(Foliation, ChartFormOrders) {
  const CheckReport a = chart_pullback_form(2, 2);
  EXPECT_TRUE(a.passed());
  EXPECT_EQ(a.data["orders"], ojson::array({2}));
  const CheckReport b = chart_pullback_form(3, 2);
  EXPECT_TRUE(b.passed());
  EXPECT_EQ(b.data["orders"], ojson::array({4, 2}));
  const CheckReport c = chart_pullback_form(2, 3);
  EXPECT_EQ(c.data["orders_match"], true);
  EXPECT_EQ(c.data["quotient_sign"], "-1");
}

TEST(Foliation, ChartField) {
  auto F = tower_for_q(2);
  const auto chart = ChartSubstitution::standard_chart(F, 2);
  const Derivation pulled = chart.pull_back(chart_theta(F, 2, 1));
  const auto s = variables(F, 2);
  EXPECT_EQ(pulled.coeffs()[0], s[0].pow(2) + s[0]);
  EXPECT_EQ(pulled.coeffs()[1], s[0] * (s[1].pow(2) + s[1]));
  for (auto [n, q] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}}) {
    for (unsigned j = 1; j <= n; ++j) EXPECT_TRUE(chart_pullback_field(n, q, j).passed()) << n << q << j;
  }
}

TEST(Foliation, PullbackCommutesWithApplication) {
  auto F = tower_for_q(3);
  const auto chart = ChartSubstitution::standard_chart(F, 3);
  const Derivation d = chart_theta(F, 3, 1);
  std::mt19937 rng(7);
  std::uniform_int_distribution<unsigned> ex(0, 3);
  std::uniform_int_distribution<std::uint32_t> co(1, 2);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Term> terms;
    for (int k = 0; k < 4; ++k) {
      const std::vector<unsigned> e{ex(rng), ex(rng), ex(rng)};
      terms.push_back({Monomial::from_exponents(e), Elem{co(rng)}});
    }
    const MPoly f = MPoly::from_terms(F, 3, terms);
    EXPECT_EQ(chart.pull_back(d).apply(chart.pull_back(f)), chart.pull_back(d.apply(f)));
  }
}

TEST(Foliation, OmegaMatchesPsi) {
  for (auto [n, q] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}}) {
    auto F = tower_for_q(q);
    const RationalMap psi = psi_map(n, F);
    const auto omega = omega_chart(F, n);
    std::vector<MPoly> dehom{MPoly::constant(F, n, F->one())};
    for (const MPoly& t : variables(F, n)) dehom.push_back(t);
    for (unsigned i = 1; i <= n; ++i) EXPECT_EQ(substitute(psi.components()[i], dehom), omega[i - 1]);
  }
}

TEST(Foliation, Splitting) {
  auto none = splitting_polynomial(2);
  ASSERT_TRUE(std::holds_alternative<NoneWitness>(none));
  EXPECT_EQ(std::get<NoneWitness>(none).candidates, 64u);
  EXPECT_EQ(std::get<NoneWitness>(none).points, 7u);
  const CheckReport r2 = splitting_report(2);
  EXPECT_TRUE(r2.passed());
  EXPECT_EQ(r2.witness["exists"], false);
  auto f3 = splitting_polynomial(3);
  ASSERT_TRUE(std::holds_alternative<MPoly>(f3));
  EXPECT_EQ(std::get<MPoly>(f3).degree(), 6);
  const CheckReport r4 = splitting_report(4);
  EXPECT_TRUE(r4.passed());
  EXPECT_EQ(r4.data["degree"], 12);
  EXPECT_EQ(r4.data["vectors_checked"], 63);
}
