#include <gtest/gtest.h>

#include <random>

#include "drinfeld/counting.hpp"
#include "drinfeld/divlat.hpp"

using namespace drinfeld;

namespace {

DivClass random_class(const LatticePtr& lat, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-5, 5);
  std::vector<Rational> c;
  for (std::size_t i = 0; i < lat->rank(); ++i) c.emplace_back(d(rng), 1 + (d(rng) + 5) % 3);
  return DivClass(lat, std::move(c));
}

}  // namespace

TEST(Divlat, SurfaceBasics) {
  const LatticePtr lat = Lattice::surface(2);
  EXPECT_EQ(lat->rank(), 8u);
  const DivClass H = DivClass::basis(lat, "H");
  EXPECT_EQ(intersect(H, H), Rational(1));
  const ProjPoint line(tower_for_q(2), {Elem{0}, Elem{0}, Elem{1}});
  const DivClass L = line_class(lat, line);
  EXPECT_EQ(intersect(L, L), Rational(-2));
  EXPECT_EQ(intersect(H, L), Rational(1));
  const DivClass K = Rational(-3) * H + total_exceptional(lat);
  EXPECT_EQ(intersect(K, K), Rational(9 - 7));
}

TEST(Divlat, LineSelfIntersection) {
  for (std::uint64_t q : {2, 3, 4}) {
    const LatticePtr lat = Lattice::surface(q);
    for (const ProjPoint& l : enumerate_projective(tower_for_q(q), 2)) {
      EXPECT_EQ(intersect(line_class(lat, l), line_class(lat, l)), Rational(-static_cast<std::int64_t>(q)));
    }
  }
}

TEST(Divlat, DistinctLinesAgainstIncidence) {
  const std::uint64_t q = 3;
  const LatticePtr lat = Lattice::surface(q);
  const auto g = IncidenceGeometry::build(q, 2);
  for (std::size_t a = 0; a < g.hyperplanes.size(); ++a) {
    for (std::size_t b = a + 1; b < g.hyperplanes.size(); ++b) {
      std::int64_t common = 0;
      for (std::size_t p = 0; p < g.points.size(); ++p) common += g.incidence[a][p] && g.incidence[b][p];
      EXPECT_EQ(intersect(line_class(lat, g.hyperplanes[a]), line_class(lat, g.hyperplanes[b])), Rational(1 - common));
    }
  }
}

TEST(Divlat, BilinearAndSymmetric) {
  const LatticePtr lat = Lattice::surface(3);
  std::mt19937 rng(11);
  for (int t = 0; t < 20; ++t) {
    const DivClass a = random_class(lat, rng), b = random_class(lat, rng), c = random_class(lat, rng);
    EXPECT_EQ(intersect(a, b), intersect(b, a));
    EXPECT_EQ(intersect(a + b, c), intersect(a, c) + intersect(b, c));
    EXPECT_EQ(intersect(Rational(3, 2) * a, c), Rational(3, 2) * intersect(a, c));
  }
}

TEST(Divlat, SurfaceLedger) {
  for (std::uint64_t q : {2, 3, 4}) EXPECT_TRUE(verify_surface_ledger(q).passed()) << q;
  const CheckReport r = verify_surface_ledger(2);
  EXPECT_EQ(r.data["M^2"], "2");
  EXPECT_EQ(r.data["M.H"], "3");
  EXPECT_EQ(verify_surface_ledger(3).data["M^2"], "12");
}

TEST(Divlat, Pushforward) {
  for (std::int64_t q : {2, 3, 4}) {
    const LatticePtr lat = Lattice::surface(q);
    const DivClass H = DivClass::basis(lat, "H");
    const DivClass E = total_exceptional(lat);
    const Rational Q(q), N(q * q + q + 1);
    EXPECT_EQ(contract_pushforward((Q * Q - Rational(1)) * H - (Q - Rational(1)) * E).lambda, (Q * Q - Q) / N);
    EXPECT_EQ(contract_pushforward((Q - Rational(1)) * H - E).lambda, -(Q + Rational(2)) / N);
    const ProjPoint l(tower_for_q(q), {Elem{1}, Elem{0}, Elem{0}});
    EXPECT_EQ(contract_pushforward(line_class(lat, l)).lambda, Rational(0));
    EXPECT_TRUE(pushforward_report(q).passed());
  }
}

TEST(Divlat, ThreefoldLedger) {
  const CheckReport r = threefold_ledger(2, 2);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.data["slope_c1L.H^2"], "8");
  EXPECT_EQ(r.data["classes"]["K"], (ojson{{"H", "-4"}, {"D2", "1"}, {"D3", "2"}}));
  EXPECT_TRUE(r.data["K-(p-1)c1detF2"].empty());
  EXPECT_TRUE(threefold_ledger(3, 3).passed());
}

TEST(Divlat, ThreefoldRefusesUnknownProducts) {
  const LatticePtr lat = Lattice::threefold(2);
  const DivClass H = DivClass::basis(lat, "H");
  const DivClass D2 = DivClass::basis(lat, "D2");
  EXPECT_EQ(intersect(H, H, H), Rational(1));
  EXPECT_EQ(intersect(D2, H, H), Rational(0));
  EXPECT_THROW(intersect(D2, D2, H), UnsupportedProduct);
  EXPECT_THROW(intersect(H, H), UnsupportedProduct);
  EXPECT_THROW(contract_pushforward(H), UsageError);
}

TEST(Divlat, ConeDiscrepancy) {
  EXPECT_EQ(cone_discrepancy(1, 1).value, Rational(1));
  for (int q : {2, 3, 4, 5}) {
    const Discrepancy d = cone_discrepancy(1, q);
    EXPECT_EQ(d.value, Rational(2 - q, q));
    EXPECT_TRUE(d.klt);
  }
  EXPECT_THROW(cone_discrepancy(0, 2), UsageError);
}
