#include "drinfeld/cremona.hpp"

#include <set>

#include "drinfeld/moore.hpp"
#include "drinfeld/parallel.hpp"

namespace drinfeld {

RationalMap::RationalMap(std::vector<MPoly> components) : comps_(std::move(components)) {
  if (comps_.empty()) throw_usage("a rational map needs components");
  int deg = -1;
  bool nonzero = false;
  for (const MPoly& c : comps_) {
    if (c.field() != comps_.front().field() || c.n_vars() != comps_.front().n_vars()) {
      throw_usage("rational map components live in different rings");
    }
    if (c.is_zero()) continue;
    nonzero = true;
    if (!c.is_homogeneous()) throw_usage("rational map component is not homogeneous");
    if (deg >= 0 && c.degree() != deg) throw_usage("rational map components have different degrees");
    deg = c.degree();
  }
  if (!nonzero) throw_usage("every component of the rational map is zero");
}

int RationalMap::degree() const {
  for (const MPoly& c : comps_) {
    if (!c.is_zero()) return c.degree();
  }
  return -1;
}

nlohmann::json RationalMap::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const MPoly& c : comps_) out.push_back(c.to_string());
  return out;
}

IndeterminacyError::IndeterminacyError(ProjPoint pt)
    : Error("rational map is not defined at " + pt.to_text()), pt_(std::move(pt)) {}

RationalMap psi_map(unsigned n, const TowerPtr& field) {
  if (n < 1) throw_usage("psi needs n >= 1");
  const auto x = variables(field, n + 1);
  std::vector<MPoly> comps;
  for (unsigned i = 0; i <= n; ++i) {
    std::vector<MPoly> args;
    for (unsigned k = 0; k <= n; ++k) {
      if (k != i) args.push_back(x[k]);
    }
    MPoly c = moore_det(args);
    comps.push_back(i % 2 ? -c : c);
  }
  return RationalMap(std::move(comps));
}

RationalMap frobenius_map(unsigned n, const TowerPtr& field, unsigned j) {
  std::vector<MPoly> comps;
  for (const MPoly& x : variables(field, n + 1)) comps.push_back(x.frobenius_p(field->e() * j));
  return RationalMap(std::move(comps));
}

ProjPoint apply(const RationalMap& f, const ProjPoint& pt) {
  if (pt.size() != f.n_vars()) throw_usage("point arity does not match the map");
  const FieldTower& F = *pt.field();
  std::vector<Elem> out;
  bool all_zero = true;
  for (const MPoly& c : f.components()) {
    out.push_back(evaluate(c, pt.coords(), F));
    all_zero = all_zero && out.back().is_zero();
  }
  if (all_zero) throw IndeterminacyError(pt);
  return ProjPoint(pt.field(), std::move(out));
}

RationalMap compose(const RationalMap& f, const RationalMap& g) {
  if (f.n_vars() != g.size()) throw_usage("maps cannot be composed: arity mismatch");
  std::vector<MPoly> comps;
  for (const MPoly& c : f.components()) comps.push_back(substitute(c, g.components()));
  return RationalMap(std::move(comps));
}

namespace {

// First nonvanishing cross-minor as a witness, or null.
ojson cross_minor_witness(const RationalMap& f, const RationalMap& g) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      const MPoly minor = f.components()[i] * g.components()[j] - f.components()[j] * g.components()[i];
      if (!minor.is_zero()) return ojson{{"i", i}, {"j", j}, {"minor", minor.to_string()}};
    }
  }
  return nullptr;
}

}  // namespace

CheckReport proj_equal(const RationalMap& f, const RationalMap& g) {
  return run_timed("cremona.proj-equal", ojson::object(), [&](CheckReport& r) {
    if (f.size() != g.size() || f.n_vars() != g.n_vars()) throw_usage("maps have different shapes");
    r.add_tower(*f.field());
    ojson w = cross_minor_witness(f, g);
    if (!w.is_null()) r.fail(std::move(w));
  });
}

CheckReport verify_graph_relations(unsigned n, std::uint64_t q) {
  return run_timed("cremona.graph", ojson{{"n", n}, {"q", q}}, [&](CheckReport& r) {
    const TowerPtr F = tower_for_q(q);
    r.add_tower(*F);
    const RationalMap psi = psi_map(n, F);
    const auto x = variables(F, n + 1);
    for (unsigned j = 0; j < n; ++j) {
      MPoly acc(F, n + 1);
      for (unsigned i = 0; i <= n; ++i) acc += x[i].frobenius_p(F->e() * j) * psi.components()[i];
      if (!acc.is_zero()) {
        r.fail(ojson{{"j", j}, {"relation", acc.to_string()}});
        return;
      }
    }
    r.data["psi_degree"] = psi.degree();
  });
}

CheckReport verify_psi_squared(unsigned n, std::uint64_t q) {
  return run_timed("cremona.psi-squared", ojson{{"n", n}, {"q", q}}, [&](CheckReport& r) {
    const TowerPtr F = tower_for_q(q);
    r.add_tower(*F);
    const std::uint64_t d = moore_degree(q, n);
    if (d * d > kMaxExponent) throw_resource("composition degree " + std::to_string(d * d) + " exceeds budget");
    const RationalMap psi = psi_map(n, F);
    const RationalMap square = compose(psi, psi);
    const RationalMap fr = frobenius_map(n, F, n - 1);
    r.data["sign_convention"] = "(-1)^i";
    r.data["composition_degree"] = square.degree();
    r.data["function_field_degree_of_square"] = ipow(q, n * (n - 1));

    ojson w = cross_minor_witness(square, fr);
    if (!w.is_null()) {
      r.fail(std::move(w));
      return;
    }

    // Shared quotient of the composition by the Frobenius components.
    std::optional<MPoly> h;
    bool shared = true;
    for (std::size_t i = 0; i <= n && shared; ++i) {
      DivisionResult res = divide(square.components()[i], fr.components()[i]);
      if (!res.remainder.is_zero()) {
        shared = false;
      } else if (!h) {
        h = std::move(res.quotient);
      } else if (!(*h == res.quotient)) {
        shared = false;
      }
    }
    r.data["common_factor_found"] = shared && h.has_value();
    if (!shared || !h) return;
    r.data["common_factor_degree"] = h->degree();
    r.data["common_factor_terms"] = h->size();
    r.data["common_factor_is_moore_determinant"] = (*h == moore_det(variables(F, n + 1)));

    // Compare the zero set of h with the rational hyperplanes over F_{q^{n+1}}.
    const TowerPtr ext = tower_for_q(q, n + 1);
    if (projective_count(ext->size(), n) > 100000) return;
    r.add_tower(*ext);
    const auto pts = enumerate_projective(ext, n);
    std::vector<char> zero(pts.size()), on_hyperplane(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
      zero[i] = evaluate(*h, pts[i].coords(), *ext).is_zero();
      on_hyperplane[i] = stratum_of_point(pts[i]) >= 1;
    });
    std::size_t zeros = 0, hyper = 0, agree = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      zeros += zero[i];
      hyper += on_hyperplane[i];
      agree += zero[i] == on_hyperplane[i];
    }
    r.data["zero_set_field_size"] = ext->size();
    r.data["common_factor_zeros"] = zeros;
    r.data["points_on_rational_hyperplanes"] = hyper;
    r.data["zero_set_matches_rational_hyperplanes"] = agree == pts.size();
  });
}

CheckReport verify_phi_bar(unsigned n, std::uint64_t q) {
  return run_timed("cremona.phi-bar", ojson{{"n", n}, {"q", q}}, [&](CheckReport& r) {
    if (2 * (n + 1) > kMaxVars) throw_resource("phi-bar identity needs more than 8 variables");
    const TowerPtr F = tower_for_q(q);
    r.add_tower(*F);
    const unsigned nv = 2 * (n + 1);
    const auto vars = variables(F, nv);
    for (unsigned j = 0; j < n; ++j) {
      MPoly inner(F, nv);
      for (unsigned i = 0; i <= n; ++i) inner += vars[i].frobenius_p(F->e() * j) * vars[n + 1 + i];
      const MPoly lhs = inner.pow(ipow(q, n - 1 - j));
      MPoly rhs(F, nv);
      for (unsigned i = 0; i <= n; ++i) {
        rhs += vars[n + 1 + i].frobenius_p(F->e() * (n - 1 - j)) * vars[i].frobenius_p(F->e() * (n - 1));
      }
      if (!(lhs == rhs)) {
        r.fail(ojson{{"j", j}, {"difference", (lhs - rhs).to_string()}});
        return;
      }
    }
  });
}

CheckReport verify_omega_endomorphism(unsigned n, std::uint64_t q, unsigned m) {
  return run_timed("cremona.omega", ojson{{"n", n}, {"q", q}, {"m", m}}, [&](CheckReport& r) {
    const TowerPtr base = tower_for_q(q);
    const TowerPtr ext = tower_for_q(q, m);
    r.add_tower(*ext);
    const MPoly delta = moore_det(variables(base, n + 1));
    const RationalMap psi = psi_map(n, base);
    const auto pts = enumerate_projective(ext, n);

    std::vector<char> in_omega(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { in_omega[i] = !evaluate(delta, pts[i].coords(), *ext).is_zero(); });
    std::vector<ProjPoint> omega;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (in_omega[i]) omega.push_back(pts[i]);
    }
    r.data["omega_count"] = omega.size();
    r.data["points_scanned"] = pts.size();
    if (omega.empty()) {
      if (m > n) r.fail(ojson{{"omega_count", 0}, {"reason", "expected a nonempty half-space for m > n"}});
      else r.vacuous("Omega(F_{q^m}) is empty for m <= n; verified over all points");
      return;
    }

    std::vector<std::optional<ProjPoint>> images(omega.size());
    std::vector<int> problem(omega.size(), 0);  // 1 undefined, 2 image outside Omega
    parallel_for(omega.size(), [&](std::size_t i) {
      try {
        images[i] = apply(psi, omega[i]);
        if (evaluate(delta, images[i]->coords(), *ext).is_zero()) problem[i] = 2;
      } catch (const IndeterminacyError&) {
        problem[i] = 1;
      }
    });
    for (std::size_t i = 0; i < omega.size(); ++i) {
      if (problem[i] == 1) {
        r.fail(ojson{{"undefined_at", omega[i].to_json()}});
        return;
      }
      if (problem[i] == 2) {
        r.fail(ojson{{"point", omega[i].to_json()}, {"image_outside_omega", images[i]->to_json()}});
        return;
      }
    }
    std::map<std::vector<Elem>, std::size_t> seen;
    for (std::size_t i = 0; i < omega.size(); ++i) {
      auto [it, inserted] = seen.emplace(images[i]->coords(), i);
      if (!inserted) {
        r.fail(ojson{{"collision", {omega[it->second].to_json(), omega[i].to_json()}},
                     {"image", images[i]->to_json()}});
        return;
      }
    }
    r.data["distinct_images"] = seen.size();
  });
}

CheckReport flop_local_model(std::uint64_t q, unsigned m) {
  return run_timed("cremona.flop", ojson{{"q", q}, {"m", m}}, [&](CheckReport& r) {
    const TowerPtr F = tower_for_q(q);
    r.add_tower(*F);
    // Variables x0, x1 (first factor) and y0, y1 (second factor).
    const auto v = variables(F, 4);
    const std::vector<MPoly> sigma{v[2].frobenius_p(F->e()), v[3].frobenius_p(F->e()), v[0], v[1]};
    auto bidegree = [](const Monomial& mono) {
      return std::pair<unsigned, unsigned>{mono.exponent(0) + mono.exponent(1), mono.exponent(2) + mono.exponent(3)};
    };
    for (unsigned a = 0; a <= 2; ++a) {
      for (unsigned b = 0; b <= 2; ++b) {
        for (unsigned i = 0; i <= a; ++i) {
          for (unsigned j = 0; j <= b; ++j) {
            const std::vector<unsigned> e{a - i, i, b - j, j};
            const MPoly mono = MPoly::monomial(F, 4, Monomial::from_exponents(e), F->one());
            const MPoly pulled = substitute(mono, sigma);
            for (const Term& t : pulled.terms()) {
              const auto bd = bidegree(t.mono);
              if (bd.first != b || bd.second != q * a) {
                r.fail(ojson{{"monomial", mono.to_string()}, {"pullback", pulled.to_string()},
                             {"bidegree", {bd.first, bd.second}}, {"expected", {b, q * a}}});
                return;
              }
            }
          }
        }
      }
    }

    const TowerPtr ext = tower_for_q(q, m);
    r.add_tower(*ext);
    const auto line = enumerate_projective(ext, 1);
    auto act = [&](const ProjPoint& x, const ProjPoint& y) {
      return std::pair<ProjPoint, ProjPoint>{y.frobenius(1), x};
    };
    for (const ProjPoint& x : line) {
      for (const ProjPoint& y : line) {
        const auto once = act(x, y);
        const auto twice = act(once.first, once.second);
        if (!(twice.first == x.frobenius(1)) || !(twice.second == y.frobenius(1))) {
          r.fail(ojson{{"point", {x.to_json(), y.to_json()}},
                       {"sigma_squared", {twice.first.to_json(), twice.second.to_json()}}});
          return;
        }
      }
    }
    r.data["point_pairs"] = line.size() * line.size();
  });
}

CheckReport verify_indeterminacy(unsigned n, std::uint64_t q, unsigned m) {
  return run_timed("cremona.indeterminacy", ojson{{"n", n}, {"q", q}, {"m", m}}, [&](CheckReport& r) {
    const TowerPtr base = tower_for_q(q);
    const TowerPtr ext = tower_for_q(q, m);
    r.add_tower(*ext);
    const RationalMap psi = psi_map(n, base);
    const auto pts = enumerate_projective(ext, n);
    std::vector<char> undefined(pts.size()), deep(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
      try {
        (void)apply(psi, pts[i]);
        undefined[i] = 0;
      } catch (const IndeterminacyError&) {
        undefined[i] = 1;
      }
      deep[i] = stratum_of_point(pts[i]) >= 2;
    });
    std::size_t count = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      count += undefined[i];
      if (undefined[i] != deep[i]) {
        r.fail(ojson{{"point", pts[i].to_json()}, {"undefined", static_cast<bool>(undefined[i])},
                     {"stratum_at_least_2", static_cast<bool>(deep[i])}});
        return;
      }
    }
    r.data["indeterminate_points"] = count;
    r.data["points_scanned"] = pts.size();
  });
}

}  // namespace drinfeld
