#include "drinfeld/foliation.hpp"

#include <algorithm>
#include <limits>

#include "drinfeld/moore.hpp"
#include "drinfeld/norm.hpp"
#include "drinfeld/parallel.hpp"
#include "drinfeld/projective.hpp"

namespace drinfeld {

Derivation chart_theta(const TowerPtr& field, unsigned n, unsigned i) {
  const std::uint64_t Q = ipow(field->q(), i);
  std::vector<MPoly> c;
  for (unsigned k = 0; k < n; ++k) {
    const MPoly t = MPoly::variable(field, n, k);
    c.push_back(MPoly::variable(field, n, k, static_cast<unsigned>(Q)) - t);
  }
  return Derivation(std::move(c));
}

Derivation cone_theta(const TowerPtr& field, unsigned n, unsigned i) {
  const std::uint64_t Q = ipow(field->q(), i);
  std::vector<MPoly> c;
  for (unsigned k = 0; k <= n; ++k) c.push_back(MPoly::variable(field, n + 1, k, static_cast<unsigned>(Q)));
  return Derivation(std::move(c));
}

std::vector<MPoly> omega_chart(const TowerPtr& field, unsigned n) {
  const auto t = variables(field, n);
  std::vector<MPoly> out;
  for (unsigned i = 1; i <= n; ++i) {
    std::vector<MPoly> args{MPoly::constant(field, n, field->one())};
    for (unsigned k = 1; k <= n; ++k) {
      if (k != i) args.push_back(t[k - 1]);
    }
    MPoly c = moore_det(args);
    out.push_back(i % 2 ? -c : c);
  }
  return out;
}

MPoly h_polynomial(const TowerPtr& field, unsigned k, unsigned n_vars) {
  if (k > n_vars) throw_usage("h polynomial needs k <= number of variables");
  const std::uint32_t q = field->q();
  const auto s = variables(field, n_vars);
  MPoly acc = MPoly::constant(field, n_vars, field->one());
  for (unsigned i = 1; i <= k; ++i) {
    // Monomials s_i, s_i s_{i+1}, ..., s_i..s_k.
    std::vector<MPoly> chain;
    MPoly m = s[i - 1];
    chain.push_back(m);
    for (unsigned l = i + 1; l <= k; ++l) {
      m *= s[l - 1];
      chain.push_back(m);
    }
    const std::uint64_t count = ipow(q, static_cast<unsigned>(chain.size()));
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      MPoly factor = MPoly::constant(field, n_vars, field->one());
      std::uint64_t rest = idx;
      for (const MPoly& c : chain) {
        const Elem a{static_cast<std::uint32_t>(rest % q)};
        rest /= q;
        if (!a.is_zero()) factor += c.scaled(a);
      }
      acc *= factor;
    }
  }
  return acc;
}

unsigned vanishing_order(const MPoly& f, unsigned i) {
  if (f.is_zero()) throw_usage("vanishing order of the zero polynomial");
  unsigned best = std::numeric_limits<unsigned>::max();
  for (const Term& t : f.terms()) best = std::min(best, t.mono.exponent(i));
  return best;
}

namespace {

void check_exponent(std::uint64_t q, unsigned power) {
  if (ipow(q, power) > kMaxExponent) throw_resource("exponent q^" + std::to_string(power) + " exceeds budget");
}

MPoly monomial_of(const TowerPtr& field, const std::vector<unsigned>& e) {
  return MPoly::monomial(field, static_cast<unsigned>(e.size()), Monomial::from_exponents(e), field->one());
}

}  // namespace

CheckReport verify_bracket_identity(unsigned n, std::uint64_t q, unsigned i, unsigned j) {
  return run_timed("foliation.bracket", ojson{{"n", n}, {"q", q}, {"i", i}, {"j", j}}, [&](CheckReport& r) {
    if (i < 1 || j < 1 || i > n || j > n) throw_usage("bracket indices must lie in 1..n");
    check_exponent(q, std::max(i, j));
    const TowerPtr F = tower_for_q(q);
    r.add_tower(*F);
    const Derivation lhs = lie_bracket(chart_theta(F, n, i), chart_theta(F, n, j));
    const Derivation rhs = chart_theta(F, n, j) - chart_theta(F, n, i);
    if (!(lhs == rhs)) r.fail(ojson{{"bracket", lhs.to_json()}, {"expected", rhs.to_json()}});
  });
}

CheckReport verify_bracket_all(unsigned n, std::uint64_t q) {
  return run_timed("foliation.bracket", ojson{{"n", n}, {"q", q}}, [&](CheckReport& r) {
    check_exponent(q, n);
    const TowerPtr F = tower_for_q(q);
    r.add_tower(*F);
    std::vector<Derivation> theta;
    for (unsigned i = 1; i <= n; ++i) theta.push_back(chart_theta(F, n, i));
    unsigned pairs = 0;
    for (unsigned i = 1; i <= n; ++i) {
      for (unsigned j = i; j <= n; ++j) {
        ++pairs;
        const Derivation lhs = lie_bracket(theta[i - 1], theta[j - 1]);
        const Derivation rhs = theta[j - 1] - theta[i - 1];
        if (!(lhs == rhs)) {
          r.fail(ojson{{"i", i}, {"j", j}, {"bracket", lhs.to_json()}, {"expected", rhs.to_json()}});
          return;
        }
      }
    }
    r.data["pairs_checked"] = pairs;
  });
}

CheckReport verify_p_closed(std::uint64_t q, unsigned n) {
  return run_timed("foliation.pclosed", ojson{{"q", q}, {"n", n}}, [&](CheckReport& r) {
    if (n < 1) throw_usage("n must be positive");
    const TowerPtr F = tower_for_q(q);
    r.add_tower(*F);
    r.data["p"] = F->p();
    r.data["e"] = F->e();
    ojson relations = ojson::array();
    for (unsigned d = 1; d <= n; ++d) {
      const Derivation delta = chart_theta(F, d, 1);
      const Derivation power = derivation_p_power(delta, F->p());
      std::string rel = "other";
      if (power == delta) rel = "delta";
      else if (power == delta.scaled(F->neg(F->one()))) rel = "minus_delta";
      relations.push_back(ojson{{"n", d}, {"p_power_equals", rel}});
      if (rel != "delta") r.fail(ojson{{"n", d}, {"p_power", power.to_json()}, {"delta", delta.to_json()}});
    }
    r.data["relations"] = relations;
    if (F->e() > 1) r.data["note"] = "chart representative with coefficients t^q - t; e > 1";
  });
}

CheckReport saito_log_tangent_check(unsigned n, std::uint64_t q) {
  return run_timed("foliation.saito", ojson{{"n", n}, {"q", q}}, [&](CheckReport& r) {
    if (moore_degree(q, n + 1) > kMooreDegreeBudget) throw_resource("Moore degree exceeds budget");
    const TowerPtr F = tower_for_q(q);
    r.add_tower(*F);
    const auto x = variables(F, n + 1);
    std::vector<Derivation> delta;
    for (unsigned i = 0; i <= n; ++i) delta.push_back(cone_theta(F, n, i));
    PolyMatrix m(n + 1);
    for (unsigned i = 0; i <= n; ++i) {
      for (unsigned j = 0; j <= n; ++j) m[i].push_back(delta[i].apply(x[j]));
    }
    const MPoly det = det_poly_matrix(m);
    const MPoly arrangement = moore_product(x);
    r.data["determinant_degree"] = det.degree();
    if (!(det == arrangement)) {
      r.fail(ojson{{"determinant", det.to_string()}, {"arrangement", arrangement.to_string()}});
      return;
    }
    std::size_t forms = 0;
    for (const ProjPoint& a : enumerate_projective(F, n)) {
      MPoly ell(F, n + 1);
      for (unsigned j = 0; j <= n; ++j) {
        if (!a[j].is_zero()) ell += x[j].scaled(a[j]);
      }
      for (unsigned i = 0; i <= n; ++i) {
        const MPoly got = delta[i].apply(ell);
        const MPoly want = ell.pow(ipow(q, i));
        if (!(got == want)) {
          r.fail(ojson{{"form", ell.to_string()}, {"i", i}, {"image", got.to_string()}, {"expected", want.to_string()}});
          return;
        }
      }
      ++forms;
    }
    r.data["forms_checked"] = forms;
  });
}

CheckReport verify_h_identity(unsigned n, std::uint64_t q) {
  return run_timed("foliation.h-identity", ojson{{"n", n}, {"q", q}}, [&](CheckReport& r) {
    if (n < 1) throw_usage("n must be positive");
    if (n > 3 || q > 3) throw_resource("h identity is budgeted for n <= 3 and q <= 3");
    const TowerPtr F = tower_for_q(q);
    r.add_tower(*F);
    const auto s = variables(F, n);
    std::vector<unsigned> e(n);
    for (unsigned i = 1; i <= n; ++i) e[i - 1] = static_cast<unsigned>(moore_degree(q, n + 1 - i));
    const MPoly h = h_polynomial(F, n, n);
    const MPoly lhs = h * monomial_of(F, e);
    std::vector<MPoly> args{MPoly::constant(F, n, F->one())};
    MPoly chain = MPoly::constant(F, n, F->one());
    for (unsigned i = 0; i < n; ++i) {
      chain *= s[i];
      args.push_back(chain);
    }
    const MPoly rhs = moore_det(args);
    r.data["h_degree"] = h.degree();
    r.data["h_terms"] = h.size();
    if (lhs == rhs) return;
    ojson w{{"lhs", lhs.to_string()}, {"rhs", rhs.to_string()}};
    if (lhs == -rhs) w["ratio"] = "-1";
    else w["difference"] = (lhs - rhs).to_string();
    r.fail(std::move(w));
  });
}

CheckReport chart_pullback_form(unsigned n, std::uint64_t q) {
  return run_timed("foliation.chart-form", ojson{{"n", n}, {"q", q}}, [&](CheckReport& r) {
    if (n < 2 || n > 3) throw_usage("chart form check needs n in {2, 3}");
    if (q > 3) throw_resource("chart form check is budgeted for q <= 3");
    const TowerPtr F = tower_for_q(q);
    r.add_tower(*F);
    const auto chart = ChartSubstitution::standard_chart(F, n);
    const auto omega = omega_chart(F, n);
    const auto pulled = chart.pull_back_form(omega);

    std::vector<unsigned> required(n, 0);
    for (unsigned i = 1; i < n; ++i) required[i - 1] = static_cast<unsigned>(moore_degree(q, n - i)) + 1;
    const MPoly divisor = monomial_of(F, required);

    std::vector<unsigned> orders(n - 1, std::numeric_limits<unsigned>::max());
    for (const MPoly& c : pulled) {
      if (c.is_zero()) continue;
      for (unsigned i = 0; i + 1 < n; ++i) orders[i] = std::min(orders[i], vanishing_order(c, i));
    }
    const std::vector<unsigned> req_orders(required.begin(), required.end() - 1);
    r.data["required_orders"] = req_orders;
    r.data["orders"] = orders;
    r.data["orders_match"] = orders == req_orders;

    std::vector<MPoly> quotients;
    for (unsigned j = 0; j < n; ++j) {
      const DivisionResult d = divide(pulled[j], divisor);
      if (!d.remainder.is_zero()) {
        r.fail(ojson{{"coefficient", j + 1}, {"remainder", d.remainder.to_string()}});
        return;
      }
      quotients.push_back(d.quotient);
    }
    if (orders != req_orders) r.fail(ojson{{"orders", orders}, {"required_orders", req_orders}});

    MPoly expected = h_polynomial(F, n - 1, n);
    if (n % 2) expected = -expected;
    const MPoly& last = quotients.back();
    const bool match = last == expected;
    r.data["quotient_match"] = match;
    r.data["quotient_sign"] = match ? "+1" : (last == -expected ? "-1" : "none");
    if (!match) {
      ojson w{{"quotient", last.to_string()}, {"expected", expected.to_string()}};
      if (last == -expected) w["ratio"] = "-1";
      r.fail(std::move(w));
    }
  });
}

CheckReport chart_pullback_field(unsigned n, std::uint64_t q, unsigned j) {
  return run_timed("foliation.chart-field", ojson{{"n", n}, {"q", q}, {"j", j}}, [&](CheckReport& r) {
    if (n < 2 || n > 3) throw_usage("chart field check needs n in {2, 3}");
    if (j < 1 || j > n) throw_usage("j must lie in 1..n");
    check_exponent(q, j);
    const TowerPtr F = tower_for_q(q);
    r.add_tower(*F);
    const std::uint64_t Q = ipow(q, j);
    const auto chart = ChartSubstitution::standard_chart(F, n);
    const Derivation pulled = chart.pull_back(chart_theta(F, n, j));
    const auto s = variables(F, n);

    std::vector<MPoly> expected;
    MPoly prefix = MPoly::constant(F, n, F->one());
    for (unsigned k = 0; k < n; ++k) {
      const MPoly core = (s[k].pow(Q - 1) - MPoly::constant(F, n, F->one())) * s[k];
      expected.push_back(prefix.pow(Q - 1) * core);
      prefix *= s[k];
    }
    const Derivation want(expected);
    if (!(pulled == want)) {
      r.fail(ojson{{"pullback", pulled.to_json()}, {"expected", want.to_json()}});
      return;
    }
    if (j == 1) {
      std::vector<unsigned> orders;
      for (unsigned i = 0; i + 1 < n; ++i) {
        unsigned o = std::numeric_limits<unsigned>::max();
        for (const MPoly& c : pulled.coeffs()) {
          if (!c.is_zero()) o = std::min(o, vanishing_order(c, i));
        }
        orders.push_back(o);
      }
      std::vector<unsigned> req(n - 1, 0);
      req[0] = 1;
      r.data["orders"] = orders;
      r.data["required_orders"] = req;
      if (orders != req) r.fail(ojson{{"orders", orders}, {"required_orders", req}});
    }
  });
}

ojson NoneWitness::to_json() const {
  return ojson{{"exists", false}, {"candidates", candidates}, {"points", points}};
}

namespace {

std::vector<std::vector<Elem>> nonzero_vectors(std::uint32_t q) {
  std::vector<std::vector<Elem>> out;
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) {
      for (std::uint32_t c = 0; c < q; ++c) {
        if (a || b || c) out.push_back({Elem{a}, Elem{b}, Elem{c}});
      }
    }
  }
  return out;
}

bool anisotropic(const MPoly& g, const std::vector<std::vector<Elem>>& vecs) {
  for (const auto& v : vecs) {
    if (evaluate(g, v).is_zero()) return false;
  }
  return true;
}

}  // namespace

std::variant<MPoly, NoneWitness> splitting_polynomial(std::uint64_t q) {
  if (q < 2 || q > 5) throw_usage("splitting polynomial needs q in {2, 3, 4, 5}");
  const TowerPtr F = tower_for_q(q);
  const auto vecs = nonzero_vectors(static_cast<std::uint32_t>(q));
  if (q == 2) {
    const auto monos = monomials_of_degree(3, 2);
    const std::uint64_t count = std::uint64_t{1} << monos.size();
    std::vector<char> hit(count, 0);
    parallel_for(count, [&](std::size_t mask) {
      std::vector<Term> terms;
      for (std::size_t k = 0; k < monos.size(); ++k) {
        if (mask >> k & 1) terms.push_back({monos[k], F->one()});
      }
      const MPoly cand = MPoly::from_terms(F, 3, terms);
      bool ok = true;
      for (const auto& v : vecs) {
        if (!(evaluate(cand, v) == F->one())) {
          ok = false;
          break;
        }
      }
      hit[mask] = ok;
    });
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      if (hit[mask]) throw InvariantError("a quadratic form takes the value 1 at every nonzero vector of F_2^3");
    }
    return NoneWitness{count, vecs.size()};
  }

  const TowerPtr ext = tower_for_q(q, static_cast<unsigned>(q));
  const Elem u = ext->generator();
  for (const auto& exps : subsets(static_cast<unsigned>(q), 3)) {
    std::vector<Elem> basis;
    for (unsigned k : exps) basis.push_back(ext->pow(u, k));
    const MPoly g = norm_form(ext, basis);
    if (!anisotropic(g, vecs)) continue;
    return g.pow(q - 1);
  }
  throw InvariantError("every restricted norm form has a rational zero");
}

CheckReport splitting_report(std::uint64_t q) {
  return run_timed("foliation.splitting", ojson{{"q", q}}, [&](CheckReport& r) {
    const TowerPtr F = tower_for_q(q);
    r.add_tower(*F);
    if (q > 2) r.add_tower(*tower_for_q(q, static_cast<unsigned>(q)));
    auto result = splitting_polynomial(q);
    if (auto* none = std::get_if<NoneWitness>(&result)) {
      r.data["exists"] = false;
      r.witness = none->to_json();
      if (q != 2) r.fail(none->to_json());
      return;
    }
    const MPoly& f = std::get<MPoly>(result);
    const auto vecs = nonzero_vectors(static_cast<std::uint32_t>(q));
    std::vector<char> bad(vecs.size(), 0);
    parallel_for(vecs.size(), [&](std::size_t i) { bad[i] = !(evaluate(f, vecs[i]) == F->one()); });
    r.data["exists"] = true;
    r.data["degree"] = f.degree();
    r.data["terms"] = f.size();
    r.data["vectors_checked"] = vecs.size();
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      if (bad[i]) {
        ojson pt = ojson::array();
        for (Elem e : vecs[i]) pt.push_back(F->to_text(e));
        r.fail(ojson{{"vector", pt}, {"value", F->to_text(evaluate(f, vecs[i]))}});
        return;
      }
    }
    if (q == 2) r.fail(ojson{{"unexpected_polynomial", f.to_string()}});
  });
}

}  // namespace drinfeld
