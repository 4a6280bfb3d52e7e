#include "drinfeld/divlat.hpp"

#include <optional>

#include "drinfeld/counting.hpp"
#include "drinfeld/moore.hpp"

namespace drinfeld {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

LatticePtr Lattice::surface(std::uint64_t q) {
  const TowerPtr F = tower_for_q(q);
  auto lat = std::shared_ptr<Lattice>(new Lattice(Kind::Surface, q));
  lat->points_ = enumerate_projective(F, 2);
  lat->names_.push_back("H");
  for (std::size_t i = 0; i < lat->points_.size(); ++i) lat->names_.push_back("E" + std::to_string(i));
  return lat;
}

LatticePtr Lattice::threefold(std::uint64_t q) {
  (void)tower_for_q(q);
  auto lat = std::shared_ptr<Lattice>(new Lattice(Kind::Threefold, q));
  lat->names_ = {"H", "D1", "D2", "D3"};
  return lat;
}

std::size_t Lattice::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  throw_usage("unknown class symbol " + name);
}

Rational Lattice::pair(std::size_t i, std::size_t j) const {
  if (kind_ != Kind::Surface) throw UnsupportedProduct("two-fold products are defined on the surface lattice only");
  if (i == 0 && j == 0) return 1;
  if (i == 0 || j == 0) return 0;
  return i == j ? -1 : 0;
}

Rational Lattice::triple(std::size_t i, std::size_t j, std::size_t k) const {
  if (kind_ != Kind::Threefold) throw UnsupportedProduct("three-fold products are defined on the threefold ledger only");
  const int h_count = (i == 0) + (j == 0) + (k == 0);
  if (h_count == 3) return 1;
  if (h_count < 2) {
    throw UnsupportedProduct("no rule for " + names_[i] + "*" + names_[j] + "*" + names_[k]);
  }
  const std::size_t other = i + j + k;
  if (names_[other] == "D1") return static_cast<std::int64_t>(projective_count(q_, 3));
  return 0;
}

DivClass::DivClass(LatticePtr lattice, std::vector<Rational> coeffs)
    : lat_(std::move(lattice)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != lat_->rank()) throw_usage("class length does not match the lattice rank");
}

DivClass DivClass::zero(LatticePtr lattice) {
  const std::size_t r = lattice->rank();
  return DivClass(std::move(lattice), std::vector<Rational>(r, 0));
}

DivClass DivClass::basis(LatticePtr lattice, const std::string& name) {
  DivClass c = zero(lattice);
  c.coeffs_[lattice->index_of(name)] = 1;
  return c;
}

void DivClass::check_same(const DivClass& o) const {
  if (lat_ != o.lat_) throw_usage("classes live in different lattices");
}

DivClass DivClass::operator+(const DivClass& o) const {
  check_same(o);
  DivClass out = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] += o.coeffs_[i];
  return out;
}

DivClass DivClass::operator-(const DivClass& o) const { return *this + (-o); }

DivClass DivClass::operator-() const { return Rational(-1) * *this; }

DivClass operator*(const Rational& s, const DivClass& c) {
  DivClass out = c;
  for (auto& x : out.coeffs_) x *= s;
  return out;
}

ojson DivClass::to_json() const {
  ojson out = ojson::object();
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != Rational(0)) out[lat_->names()[i]] = to_string(coeffs_[i]);
  }
  return out;
}

Rational intersect(const DivClass& a, const DivClass& b) {
  if (a.lattice() != b.lattice()) throw_usage("classes live in different lattices");
  const Lattice& L = *a.lattice();
  Rational acc = 0;
  for (std::size_t i = 0; i < L.rank(); ++i) {
    if (a[i] == Rational(0)) continue;
    for (std::size_t j = 0; j < L.rank(); ++j) {
      if (b[j] != Rational(0)) acc += a[i] * b[j] * L.pair(i, j);
    }
  }
  return acc;
}

Rational intersect(const DivClass& a, const DivClass& b, const DivClass& c) {
  if (a.lattice() != b.lattice() || a.lattice() != c.lattice()) throw_usage("classes live in different lattices");
  const Lattice& L = *a.lattice();
  Rational acc = 0;
  for (std::size_t i = 0; i < L.rank(); ++i) {
    if (a[i] == Rational(0)) continue;
    for (std::size_t j = 0; j < L.rank(); ++j) {
      if (b[j] == Rational(0)) continue;
      for (std::size_t k = 0; k < L.rank(); ++k) {
        if (c[k] != Rational(0)) acc += a[i] * b[j] * c[k] * L.triple(i, j, k);
      }
    }
  }
  return acc;
}

DivClass total_exceptional(const LatticePtr& lat) {
  std::vector<Rational> c(lat->rank(), 1);
  c[0] = 0;
  return DivClass(lat, std::move(c));
}

DivClass line_class(const LatticePtr& lat, const ProjPoint& line) {
  if (lat->kind() != Lattice::Kind::Surface) throw_usage("line classes live on the surface lattice");
  const FieldTower& F = *line.field();
  std::vector<Rational> c(lat->rank(), 0);
  c[0] = 1;
  for (std::size_t i = 0; i < lat->points().size(); ++i) {
    const auto& pt = lat->points()[i].coords();
    Elem dot = F.zero();
    for (std::size_t k = 0; k < 3; ++k) dot = F.add(dot, F.mul(line[k], pt[k]));
    if (dot.is_zero()) c[i + 1] = -1;
  }
  return DivClass(lat, std::move(c));
}

namespace {

using RMatrix = std::vector<std::vector<Rational>>;

// Gauss-Jordan on [A | b]; nullopt when inconsistent, free variables set to 0.
std::optional<std::vector<Rational>> solve_rational(RMatrix a, std::vector<Rational> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == Rational(0)) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    const Rational inv = Rational(1) / a[r][c];
    for (auto& x : a[r]) x *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == Rational(0)) continue;
      const Rational f = a[i][c];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] -= f * a[r][k];
      b[i] -= f * b[r];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (b[i] != Rational(0)) return std::nullopt;
  }
  std::vector<Rational> x(cols, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = b[i];
  return x;
}

std::vector<DivClass> all_line_classes(const LatticePtr& lat) {
  std::vector<DivClass> out;
  for (const ProjPoint& l : enumerate_projective(tower_for_q(lat->q()), 2)) out.push_back(line_class(lat, l));
  return out;
}

DivClass sum(const LatticePtr& lat, const std::vector<DivClass>& v) {
  DivClass acc = DivClass::zero(lat);
  for (const DivClass& c : v) acc = acc + c;
  return acc;
}

Rational qr(std::uint64_t x) { return Rational(static_cast<std::int64_t>(x)); }

}  // namespace

Pushforward contract_pushforward(const DivClass& c) {
  const LatticePtr& lat = c.lattice();
  if (lat->kind() != Lattice::Kind::Surface) throw_usage("pushforward needs a surface class");
  const auto lines = all_line_classes(lat);
  const DivClass E = total_exceptional(lat);
  const std::size_t N = lines.size();

  // sum_i c_i (L_i . L_j) = -(E . L_j).
  RMatrix a(N, std::vector<Rational>(N));
  std::vector<Rational> b(N);
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t i = 0; i < N; ++i) a[j][i] = intersect(lines[i], lines[j]);
    b[j] = -intersect(E, lines[j]);
  }
  const auto coef = solve_rational(a, b);
  if (!coef) throw NotPushforwardError("no combination of line classes is orthogonal to every line");
  DivClass P = E;
  for (std::size_t i = 0; i < N; ++i) P = P + (*coef)[i] * lines[i];

  // c = lambda P + sum mu_i L_i, coordinatewise in the basis (H, E_i).
  const std::size_t R = lat->rank();
  RMatrix m(R, std::vector<Rational>(N + 1));
  for (std::size_t k = 0; k < R; ++k) {
    m[k][0] = P[k];
    for (std::size_t i = 0; i < N; ++i) m[k][i + 1] = lines[i][k];
  }
  const auto sol = solve_rational(m, c.coeffs());
  if (!sol) throw NotPushforwardError("class is not a multiple of P(E_Y) modulo the contracted curves");
  return Pushforward{(*sol)[0], P};
}

Discrepancy cone_discrepancy(int m, int d) {
  if (m < 1 || d < 1) throw_usage("cone discrepancy needs m >= 1 and d >= 1");
  const Rational a = Rational(m + 1, d) - 1;
  return Discrepancy{a, a > Rational(-1)};
}

CheckReport verify_surface_ledger(std::uint64_t q) {
  return run_timed("divlat.surface", ojson{{"q", q}}, [&](CheckReport& r) {
    const LatticePtr lat = Lattice::surface(q);
    r.add_tower(*tower_for_q(q));
    const DivClass H = DivClass::basis(lat, "H");
    const DivClass E = total_exceptional(lat);
    const auto lines = all_line_classes(lat);
    const DivClass B = sum(lat, lines);
    const Rational Q = qr(q), N = qr(q * q + q + 1);
    const DivClass K = Rational(-3) * H + E;
    const DivClass M = (Q * Q - 1) * H - (Q - 1) * E;
    const DivClass D = B + E;
    const DivClass H2 = (Q + 1) * H - E;
    const DivClass H3 = H;

    ojson items = ojson::object();
    auto item = [&](const char* name, bool ok, ojson detail) {
      items[name] = ok;
      if (!ok) r.fail(ojson{{"item", name}, {"detail", std::move(detail)}});
    };

    item("a", N * H == B + (Q + 1) * E, ojson{{"lines_sum", B.to_json()}});

    const DivClass seq1 = (-(Q + 2) * H + Rational(2) * E) + ((Q - 1) * H - E);
    const DivClass seq2 = M + ((Q - 1) * H - E);
    const DivClass seq3 = M + (Q - 1) * H;
    item("b", seq1 == K && seq2 == K + B && seq3 == K + D,
         ojson{{"seq1", seq1.to_json()}, {"seq2", seq2.to_json()}, {"seq3", seq3.to_json()}, {"K", K.to_json()}});

    const DivClass kd = K + D;
    item("c", kd == (Q - 1) * ((Q + 2) * H - E) && kd == (Q - 1) * (H2 + H3), ojson{{"K+D", kd.to_json()}});

    const Rational m2 = intersect(M, M), mh = intersect(M, H);
    item("d", m2 > Rational(0) && mh > Rational(0) && m2 == (Q * Q - 1) * (Q * Q - 1) - (Q - 1) * (Q - 1) * N && mh == Q * Q - 1,
         ojson{{"M^2", to_string(m2)}, {"M.H", to_string(mh)}});

    bool nef = true;
    for (std::size_t i = 1; i < lat->rank(); ++i) {
      nef = nef && intersect(H2, DivClass::basis(lat, lat->names()[i])) >= Rational(0);
    }
    bool h2_lines_zero = true;
    for (const DivClass& l : lines) h2_lines_zero = h2_lines_zero && intersect(H2, l) == Rational(0);
    item("e", nef && h2_lines_zero, ojson{{"nonnegative_on_exceptional", nef}, {"zero_on_lines", h2_lines_zero}});

    // Strict transforms: self-intersection -q, pairwise disjoint.
    bool self_ok = true, disjoint_ok = true;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      self_ok = self_ok && intersect(lines[i], lines[i]) == -Q;
      for (std::size_t j = i + 1; j < lines.size(); ++j) disjoint_ok = disjoint_ok && intersect(lines[i], lines[j]) == Rational(0);
    }
    item("line_self_intersection", self_ok, ojson{{"expected", to_string(-Q)}});
    item("lines_disjoint", disjoint_ok, ojson::object());

    r.data["items"] = items;
    r.data["M^2"] = to_string(m2);
    r.data["M.H"] = to_string(mh);
    r.data["K^2"] = to_string(intersect(K, K));
    r.data["line_self_intersection"] = to_string(intersect(lines.front(), lines.front()));
    r.data["classes"] = ojson{{"K", K.to_json()}, {"M", M.to_json()}, {"H2", H2.to_json()}, {"K+D", kd.to_json()}};
  });
}

CheckReport pushforward_report(std::uint64_t q) {
  return run_timed("divlat.pushforward", ojson{{"q", q}}, [&](CheckReport& r) {
    const LatticePtr lat = Lattice::surface(q);
    r.add_tower(*tower_for_q(q));
    const DivClass H = DivClass::basis(lat, "H");
    const DivClass E = total_exceptional(lat);
    const Rational Q = qr(q), N = qr(q * q + q + 1);
    const DivClass M = (Q * Q - 1) * H - (Q - 1) * E;
    const DivClass S = (Q - 1) * H - E;
    const DivClass L = line_class(lat, enumerate_projective(tower_for_q(q), 2).front());

    const Pushforward pm = contract_pushforward(M);
    const Pushforward ps = contract_pushforward(S);
    const Pushforward pl = contract_pushforward(L);
    r.data["pullback_of_EY"] = pm.pullback_of_ey.to_json();
    r.data["lambda_M"] = to_string(pm.lambda);
    r.data["lambda_(q-1)H-E"] = to_string(ps.lambda);
    r.data["lambda_line"] = to_string(pl.lambda);
    const Rational want_m = (Q * Q - Q) / N, want_s = -(Q + 2) / N;
    const DivClass want_p = E + ((Q + 1) / Q) * sum(lat, all_line_classes(lat));
    if (pm.lambda != want_m || ps.lambda != want_s || pl.lambda != Rational(0) || !(pm.pullback_of_ey == want_p)) {
      r.fail(ojson{{"lambda_M", to_string(pm.lambda)}, {"expected_M", to_string(want_m)},
                   {"lambda_(q-1)H-E", to_string(ps.lambda)}, {"expected_(q-1)H-E", to_string(want_s)},
                   {"lambda_line", to_string(pl.lambda)}});
    }
  });
}

CheckReport threefold_ledger(std::uint64_t q, std::uint64_t p) {
  return run_timed("divlat.threefold", ojson{{"q", q}, {"p", p}}, [&](CheckReport& r) {
    const TowerPtr F = tower_for_q(q);
    if (F->p() != p) throw_usage("p must be the characteristic of F_q");
    r.add_tower(*F);
    const LatticePtr lat = Lattice::threefold(q);
    const DivClass H = DivClass::basis(lat, "H");
    const DivClass D1 = DivClass::basis(lat, "D1");
    const DivClass D2 = DivClass::basis(lat, "D2");
    const DivClass D3 = DivClass::basis(lat, "D3");
    const Rational Q = qr(q), P = qr(p);
    auto h2 = [&](const DivClass& c) { return intersect(c, H, H); };

    ojson items = ojson::object();
    auto item = [&](const char* name, bool ok, ojson detail) {
      items[name] = ok;
      if (!ok) r.fail(ojson{{"item", name}, {"detail", std::move(detail)}});
    };

    const DivClass K = Rational(-4) * H + D2 + Rational(2) * D3;
    item("a", K[0] == Rational(-4) && K[2] == Rational(1) && K[3] == Rational(2), ojson{{"K", K.to_json()}});

    const DivClass c1 = -(Q - 1) * (Q + 2) * H + Q * D3 + D2;
    const DivClass s1 = -(Q - 1) * H + D3;
    const DivClass s2 = -(Q * Q - 1) * H + (Q - 1) * D3 + D2;
    item("b", s1 + s2 == c1, ojson{{"sum", (s1 + s2).to_json()}, {"c1detF2", c1.to_json()}});

    const DivClass kc = K - (P - 1) * c1;
    r.data["K-(p-1)c1detF2"] = kc.to_json();
    if (p == 2 && q == 2) item("c", kc == DivClass::zero(lat), ojson{{"difference", kc.to_json()}});

    const DivClass Lt = (Q * Q + Q + 2) * H - (Q + 2) * D3 - Rational(2) * D2;
    const Rational slope = h2(Lt);
    item("d", Lt == -K - c1 && slope == Q * Q + Q + 2 && slope > Rational(0),
         ojson{{"c1L", Lt.to_json()}, {"slope", to_string(slope)}});

    // H_c = ((q^{n+2-c}-1)/(q-1)) H - sum_{i=0}^{n-c} ((q^{i+1}-1)/(q-1)) D^{i+c}, n = 3.
    const std::vector<DivClass> D{D1, D2, D3};
    auto Hc = [&](unsigned c) {
      DivClass out = qr(moore_degree(q, 5 - c)) * H;
      for (unsigned i = 0; i + c <= 3; ++i) out = out - qr(moore_degree(q, i + 1)) * D[i + c - 1];
      return out;
    };
    DivClass lhs = DivClass::zero(lat);
    for (unsigned c = 1; c <= 3; ++c) lhs = lhs + (Q - 1) * Hc(c + 1);
    const DivClass rhs = K + D1 + D2 + D3;
    const DivClass rel = Hc(1);
    const DivClass diff = rhs - lhs;
    // diff must be a rational multiple of the relation H_1 ~ 0.
    const Rational t = diff[0] / rel[0];
    item("e", diff == t * rel, ojson{{"lhs", lhs.to_json()}, {"rhs", rhs.to_json()}, {"relation", rel.to_json()}});

    r.data["items"] = items;
    r.data["relation_multiple"] = to_string(t);
    r.data["slope_c1L.H^2"] = to_string(slope);
    r.data["summand_slopes"] = {to_string(h2(s1)), to_string(h2(s2))};
    r.data["slope_c1L(-D1).H^2"] = to_string(h2(Lt - D1));
    r.data["classes"] = ojson{{"K", K.to_json()}, {"c1detF2", c1.to_json()}, {"c1L", Lt.to_json()},
                              {"H2", Hc(2).to_json()}, {"H3", Hc(3).to_json()}, {"H4", Hc(4).to_json()}};
  });
}

CheckReport discrepancy_report(int m, int d) {
  return run_timed("divlat.discrepancy", ojson{{"m", m}, {"d", d}}, [&](CheckReport& r) {
    const Discrepancy a = cone_discrepancy(m, d);
    r.data["discrepancy"] = to_string(a.value);
    r.data["klt"] = a.klt;
    if (!a.klt) r.fail(ojson{{"discrepancy", to_string(a.value)}});
  });
}

}  // namespace drinfeld
