#include "drinfeld/linsys.hpp"

#include <map>
#include <set>
#include <unordered_map>

#include "drinfeld/counting.hpp"
#include "drinfeld/cremona.hpp"
#include "drinfeld/linalg.hpp"
#include "drinfeld/moore.hpp"
#include "drinfeld/parallel.hpp"

namespace drinfeld {

ojson SolutionSpace::to_json() const {
  ojson basis_json = ojson::array();
  for (const MPoly& f : basis) basis_json.push_back(f.to_string());
  return ojson{{"dimension", dimension}, {"rational", rational}, {"basis", basis_json}};
}

unsigned extension_for_degree(std::uint64_t q, unsigned d) {
  unsigned M = 1;
  while (ipow(q, M) <= d) ++M;
  return M;
}

namespace {

std::vector<std::vector<unsigned>> multi_indices_below(unsigned n_vars, unsigned r) {
  std::vector<std::vector<unsigned>> out;
  for (unsigned k = 0; k < r; ++k) {
    for (const Monomial& m : monomials_of_degree(n_vars, k)) out.push_back(m.exponents(n_vars));
  }
  return out;
}

// Row of the condition D^alpha f(P) = 0 against the given monomials.
std::vector<Elem> condition_row(const FieldTower& F, const std::vector<Monomial>& monos,
                                const std::vector<unsigned>& alpha, const std::vector<std::vector<Elem>>& powers) {
  const unsigned nv = static_cast<unsigned>(alpha.size());
  std::vector<Elem> row(monos.size(), F.zero());
  for (std::size_t k = 0; k < monos.size(); ++k) {
    Elem v = F.one();
    for (unsigned i = 0; i < nv && !v.is_zero(); ++i) {
      const unsigned b = monos[k].exponent(i);
      if (b < alpha[i]) {
        v = F.zero();
        break;
      }
      const unsigned binom = binomial_mod_p(b, alpha[i], F.p());
      v = F.mul(v, F.mul(F.from_int(binom), powers[i][b - alpha[i]]));
    }
    row[k] = v;
  }
  return row;
}

std::vector<std::vector<Elem>> power_table(const FieldTower& F, const ProjPoint& pt, unsigned d) {
  std::vector<std::vector<Elem>> out;
  for (Elem x : pt.coords()) {
    std::vector<Elem> pw{F.one()};
    for (unsigned k = 1; k <= d; ++k) pw.push_back(F.mul(pw.back(), x));
    out.push_back(std::move(pw));
  }
  return out;
}

std::vector<Elem> coefficient_vector(const MPoly& f, const std::vector<Monomial>& monos) {
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t k = 0; k < monos.size(); ++k) index.emplace(monos[k].bits(), k);
  std::vector<Elem> v(monos.size(), Elem{0});
  for (const Term& t : f.terms()) {
    auto it = index.find(t.mono.bits());
    if (it == index.end()) throw_usage("polynomial has a monomial of the wrong degree");
    v[it->second] = t.coef;
  }
  return v;
}

MPoly poly_from_vector(const TowerPtr& F, unsigned n_vars, const std::vector<Monomial>& monos,
                       const std::vector<Elem>& v) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < monos.size(); ++k) {
    if (!v[k].is_zero()) terms.push_back({monos[k], v[k]});
  }
  return MPoly::from_terms(F, n_vars, terms);
}

// Rank of the coefficient vectors of a family of forms of one degree.
std::size_t span_rank(const std::vector<MPoly>& forms, const std::vector<Monomial>& monos, const TowerPtr& F) {
  DenseMatrix m(F, 0, monos.size());
  for (const MPoly& f : forms) m.append_row(coefficient_vector(f.embed(F), monos));
  return rank(m);
}

}  // namespace

SolutionSpace solve_vanishing(const VanishingProblem& problem) {
  if (!problem.field || problem.field->m() != 1) throw_usage("vanishing problems are posed over F_q");
  const unsigned nv = problem.n + 1;
  const auto monos = monomials_of_degree(nv, problem.degree);
  TowerPtr ext = problem.field;
  for (const Condition& c : problem.conditions) {
    if (c.point.size() != nv) throw_usage("condition point has the wrong number of coordinates");
    if (!c.point.field()->same_base(*problem.field)) throw_usage("condition point lies over a different F_q");
    if (ext == problem.field) ext = c.point.field();
    else if (c.point.field() != ext) throw_usage("condition points must share one field");
  }
  const FieldTower& F = *ext;

  std::vector<std::vector<std::vector<Elem>>> blocks(problem.conditions.size());
  parallel_for(problem.conditions.size(), [&](std::size_t idx) {
    const Condition& c = problem.conditions[idx];
    if (c.multiplicity == 0) return;
    const auto powers = power_table(F, c.point, problem.degree);
    for (const auto& alpha : multi_indices_below(nv, c.multiplicity)) {
      blocks[idx].push_back(condition_row(F, monos, alpha, powers));
    }
  });
  DenseMatrix m(ext, 0, monos.size());
  for (const auto& b : blocks) {
    for (const auto& row : b) m.append_row(row);
  }

  SolutionSpace out;
  const auto null = nullspace(m);
  out.dimension = null.size();
  if (null.empty()) return out;
  const Echelon ech = rref(DenseMatrix::from_rows(ext, null));
  for (std::size_t i = 0; i < ech.matrix.rows() && out.rational; ++i) {
    for (Elem x : ech.matrix.row(i)) {
      if (!F.in_base(x)) {
        out.rational = false;
        break;
      }
    }
  }
  const TowerPtr target = out.rational ? problem.field : ext;
  for (std::size_t i = 0; i < ech.matrix.rows(); ++i) out.basis.push_back(poly_from_vector(target, nv, monos, ech.matrix.row(i)));
  return out;
}

bool satisfies(const MPoly& f, const std::vector<Condition>& conditions) {
  for (const Condition& c : conditions) {
    if (c.multiplicity == 0) continue;
    const FieldTower& F = *c.point.field();
    for (const auto& alpha : multi_indices_below(f.n_vars(), c.multiplicity)) {
      const MPoly d = hasse_derivative(f, alpha);
      if (!d.is_zero() && !evaluate(d, c.point.coords(), F).is_zero()) return false;
    }
  }
  return true;
}

std::vector<ProjPoint> subspace_points(unsigned n, unsigned c, const TowerPtr& ext) {
  if (c < 1 || c > n) throw_usage("codimension must satisfy 1 <= c <= n");
  std::set<ProjPoint> seen;
  for (const DenseMatrix& basis : rational_subspaces(ext->base(), n + 1, n + 1 - c)) {
    DenseMatrix lifted(ext, basis.rows(), basis.cols());
    for (std::size_t i = 0; i < basis.rows(); ++i) {
      for (std::size_t j = 0; j < basis.cols(); ++j) lifted.at(i, j) = basis.at(i, j);
    }
    for (ProjPoint& p : points_of_subspace(lifted, ext)) seen.insert(std::move(p));
  }
  return {seen.begin(), seen.end()};
}

std::vector<std::pair<MPoly, unsigned>> reducibility_probe(const MPoly& f) {
  if (f.n_vars() != 3 || !f.is_homogeneous() || f.is_zero()) throw_usage("reducibility probe needs a nonzero plane form");
  const TowerPtr base = f.field()->base();
  const auto x = variables(base, 3);
  std::vector<std::pair<MPoly, unsigned>> out;
  for (const ProjPoint& a : enumerate_projective(base, 2)) {
    MPoly ell(base, 3);
    for (unsigned j = 0; j < 3; ++j) {
      if (!a[j].is_zero()) ell += x[j].scaled(a[j]);
    }
    const MPoly lifted = ell.embed(f.field());
    MPoly g = f;
    unsigned mult = 0;
    for (;;) {
      DivisionResult d = divide(g, lifted);
      if (!d.remainder.is_zero()) break;
      ++mult;
      g = std::move(d.quotient);
    }
    if (mult > 0) out.emplace_back(ell, mult);
  }
  return out;
}

CheckReport en_dimension_check(unsigned n, unsigned c, std::uint64_t q) {
  return run_timed("linsys.en-dimension", ojson{{"n", n}, {"c", c}, {"q", q}}, [&](CheckReport& r) {
    if (c < 2 || c > n) throw_usage("en dimension check needs 2 <= c <= n");
    const std::uint64_t d = moore_degree(q, n + 2 - c);
    if (d > kMaxExponent) throw_resource("degree " + std::to_string(d) + " exceeds budget");
    const TowerPtr base = tower_for_q(q);
    const unsigned M = extension_for_degree(q, static_cast<unsigned>(d));
    const TowerPtr ext = tower_for_q(q, M);
    r.add_tower(*ext);
    VanishingProblem prob{n, static_cast<unsigned>(d), base, {}};
    for (ProjPoint& p : subspace_points(n, c, ext)) prob.conditions.push_back({std::move(p), 1});
    const SolutionSpace sol = solve_vanishing(prob);
    const std::uint64_t expected = binomial(n + 1, n + 2 - c);
    r.data["degree"] = d;
    r.data["extension_degree"] = M;
    r.data["condition_points"] = prob.conditions.size();
    r.data["dimension"] = sol.dimension;
    r.data["expected_dimension"] = expected;
    r.data["rational_basis"] = sol.rational;
    if (sol.dimension != expected) {
      r.fail(ojson{{"dimension", sol.dimension}, {"expected", expected}});
      return;
    }
    for (const MPoly& f : sol.basis) {
      if (!satisfies(f, prob.conditions)) {
        r.fail(ojson{{"basis_element_fails_conditions", f.to_string()}});
        return;
      }
    }
    const auto gens = z_c_generators(n, c, base);
    const auto monos = monomials_of_degree(n + 1, static_cast<unsigned>(d));
    std::vector<MPoly> both = sol.basis;
    both.insert(both.end(), gens.begin(), gens.end());
    const std::size_t rb = span_rank(sol.basis, monos, ext), rg = span_rank(gens, monos, ext),
                      ru = span_rank(both, monos, ext);
    r.data["moore_minor_rank"] = rg;
    r.data["spans_equal"] = rb == rg && rg == ru;
    if (!(rb == rg && rg == ru)) r.fail(ojson{{"basis_rank", rb}, {"minor_rank", rg}, {"union_rank", ru}});
  });
}

CheckReport vanishing_zero_checks(std::uint64_t q) {
  return run_timed("linsys.vanishing-zero", ojson{{"q", q}}, [&](CheckReport& r) {
    const TowerPtr base = tower_for_q(q);
    const unsigned n = 3;
    struct Case {
      const char* name;
      unsigned c;
      std::uint64_t degree;
    };
    const Case cases[] = {{"Z2", 2, q * q - 1}, {"Z3", 3, q - 1}};
    for (const Case& cs : cases) {
      if (cs.degree > kMaxExponent) throw_resource("degree exceeds budget");
      const unsigned d = static_cast<unsigned>(cs.degree);
      const unsigned M = extension_for_degree(q, d);
      const TowerPtr ext = tower_for_q(q, M);
      r.add_tower(*ext);
      VanishingProblem prob{n, d, base, {}};
      for (ProjPoint& p : subspace_points(n, cs.c, ext)) prob.conditions.push_back({std::move(p), 1});
      const SolutionSpace sol = solve_vanishing(prob);
      r.data[cs.name] = ojson{{"degree", d}, {"extension_degree", M}, {"condition_points", prob.conditions.size()},
                              {"dimension", sol.dimension}};
      if (sol.dimension != 0) r.fail(ojson{{"locus", cs.name}, {"dimension", sol.dimension}});
    }
  });
}

namespace {

std::vector<MPoly> net_forms(const TowerPtr& base) { return psi_map(2, base).components(); }

// Points of P^2(ext) whose coordinates lie in the subfield of degree m.
std::vector<ProjPoint> subfield_points(const std::vector<ProjPoint>& pts, unsigned m) {
  std::vector<ProjPoint> out;
  for (const ProjPoint& p : pts) {
    bool fixed = true;
    for (Elem x : p.coords()) fixed = fixed && p.field()->frobenius_q(x, m) == x;
    if (fixed) out.push_back(p);
  }
  return out;
}

MPoly net_member(const std::vector<MPoly>& s, const ProjPoint& abc) {
  const TowerPtr& F = abc.field();
  MPoly f(F, 3);
  for (unsigned k = 0; k < 3; ++k) {
    if (!abc[k].is_zero()) f += s[k].embed(F).scaled(abc[k]);
  }
  return f;
}

ProjPoint qth_root_point(const ProjPoint& p) {
  std::vector<Elem> c;
  for (Elem x : p.coords()) c.push_back(p.field()->qth_root(x));
  return ProjPoint(p.field(), std::move(c));
}

}  // namespace

CheckReport moving_singularity_check(std::uint64_t q, unsigned m) {
  return run_timed("linsys.moving-singularity", ojson{{"q", q}, {"m", m}}, [&](CheckReport& r) {
    if (m < 1 || m > 3) throw_usage("moving singularity check needs 1 <= m <= 3");
    const TowerPtr base = tower_for_q(q);
    const TowerPtr search = tower_for_q(q, 2 * m);
    r.add_tower(*search);
    const auto s = net_forms(base);

    // The net is the full system of degree-(q+1) curves through P^2(F_q).
    VanishingProblem prob{2, static_cast<unsigned>(q + 1), base, {}};
    for (const ProjPoint& p : enumerate_projective(base, 2)) prob.conditions.push_back({p, 1});
    const SolutionSpace net = solve_vanishing(prob);
    const auto monos = monomials_of_degree(3, static_cast<unsigned>(q + 1));
    std::vector<MPoly> both = net.basis;
    both.insert(both.end(), s.begin(), s.end());
    r.data["net_dimension"] = net.dimension;
    const bool spans = net.dimension == 3 && span_rank(s, monos, base) == 3 && span_rank(both, monos, base) == 3;
    r.data["net_spanned_by_s"] = spans;
    if (!spans) {
      r.fail(ojson{{"net", net.to_json()}});
      return;
    }

    const auto all = enumerate_projective(search, 2);
    const auto curves = subfield_points(all, m);
    if (curves.size() * all.size() > 200'000'000ULL) throw_resource("singularity search exceeds budget");
    r.data["search_field_size"] = search->size();
    r.data["points_searched"] = all.size();
    r.data["curves"] = curves.size();

    std::vector<std::vector<ProjPoint>> singular(curves.size());
    parallel_for(curves.size(), [&](std::size_t i) {
      const MPoly f = net_member(s, curves[i]);
      const MPoly d0 = partial(f, 0), d1 = partial(f, 1), d2 = partial(f, 2);
      for (const ProjPoint& p : all) {
        const auto& x = p.coords();
        if (evaluate(f, x, *search).is_zero() && evaluate(d0, x, *search).is_zero() &&
            evaluate(d1, x, *search).is_zero() && evaluate(d2, x, *search).is_zero()) {
          singular[i].push_back(p);
        }
      }
    });
    std::map<ProjPoint, std::size_t> owner;
    for (std::size_t i = 0; i < curves.size(); ++i) {
      const ProjPoint expected = qth_root_point(curves[i]);
      if (singular[i].size() != 1 || !(singular[i].front() == expected)) {
        ojson found = ojson::array();
        for (const ProjPoint& p : singular[i]) found.push_back(to_ojson(p.to_json()));
        r.fail(ojson{{"curve", curves[i].to_json()}, {"singular_points", found}, {"expected", expected.to_json()}});
        return;
      }
      auto [it, fresh] = owner.emplace(expected, i);
      if (!fresh) {
        r.fail(ojson{{"collision", {curves[it->second].to_json(), curves[i].to_json()}}, {"point", expected.to_json()}});
        return;
      }
    }
    r.data["distinct_singular_points"] = owner.size();
  });
}

CheckReport reducibility_check(std::uint64_t q, unsigned m) {
  return run_timed("linsys.reducibility", ojson{{"q", q}, {"m", m}}, [&](CheckReport& r) {
    const TowerPtr base = tower_for_q(q);
    const TowerPtr ext = tower_for_q(q, m);
    r.add_tower(*ext);
    const auto s = net_forms(base);
    const auto curves = enumerate_projective(ext, 2);
    std::vector<std::vector<std::pair<MPoly, unsigned>>> factors(curves.size());
    parallel_for(curves.size(), [&](std::size_t i) { factors[i] = reducibility_probe(net_member(s, curves[i])); });
    const auto lines = enumerate_projective(base, 2);
    std::size_t reducible = 0;
    for (std::size_t i = 0; i < curves.size(); ++i) {
      const ProjPoint sing = qth_root_point(curves[i]);
      // Rational lines through the singular point.
      std::set<std::vector<Elem>> through;
      for (const ProjPoint& l : lines) {
        Elem dot = ext->zero();
        for (unsigned k = 0; k < 3; ++k) dot = ext->add(dot, ext->mul(l[k], sing[k]));
        if (dot.is_zero()) through.insert(l.coords());
      }
      std::set<std::vector<Elem>> found;
      for (const auto& [ell, mult] : factors[i]) {
        std::vector<Elem> c;
        for (const Monomial& mono : monomials_of_degree(3, 1)) c.push_back(ell.coefficient(mono));
        found.insert(ProjPoint(base, c).coords());
      }
      reducible += !found.empty();
      if (found != through) {
        ojson got = ojson::array();
        for (const auto& [ell, mult] : factors[i]) got.push_back(ell.to_string());
        r.fail(ojson{{"curve", curves[i].to_json()}, {"singular_point", sing.to_json()},
                     {"rational_lines_through_point", through.size()}, {"line_factors", got}});
        return;
      }
    }
    r.data["curves"] = curves.size();
    r.data["reducible_curves"] = reducible;
  });
}

CheckReport imposed_conditions_experiment(unsigned d, const std::vector<AppendixPoint>& points, int s,
                                          TowerPtr base) {
  ojson pts = ojson::array();
  for (const AppendixPoint& p : points) pts.push_back(ojson{{"point", p.point.to_json()}, {"mult", p.q_i}});
  return run_timed("linsys.appendix", ojson{{"d", d}, {"s", s}, {"points", pts}}, [&](CheckReport& r) {
    if (s < 0) throw_usage("s must be nonnegative");
    if (!base) {
      if (points.empty()) throw_usage("the experiment needs a field or at least one point");
      base = points.front().point.field()->base();
    }
    r.add_tower(*base);
    for (const AppendixPoint& p : points) r.add_tower(*p.point.field());
    VanishingProblem prob{2, static_cast<unsigned>(s), base, {}};
    std::int64_t correction = 0;
    for (const AppendixPoint& p : points) {
      if (p.q_i < 1) throw_usage("multiplicities must be positive");
      prob.conditions.push_back({p.point, p.q_i - 1});
      correction += static_cast<std::int64_t>(p.q_i) * (p.q_i - 1) / 2;
    }
    const SolutionSpace sol = solve_vanishing(prob);
    const std::int64_t chi = static_cast<std::int64_t>(binomial(s + 2, 2)) - correction;
    const std::int64_t h1 = static_cast<std::int64_t>(sol.dimension) - chi;
    r.data["h0_actual"] = sol.dimension;
    r.data["chi"] = chi;
    r.data["h1"] = h1;
    r.data["rational_basis"] = sol.rational;
    r.data["question_candidate"] = h1 > 0 && s + 2 >= static_cast<int>(d);
    for (const MPoly& f : sol.basis) {
      if (!satisfies(f, prob.conditions)) {
        r.fail(ojson{{"basis_element_fails_conditions", f.to_string()}});
        return;
      }
    }
  });
}

}  // namespace drinfeld
