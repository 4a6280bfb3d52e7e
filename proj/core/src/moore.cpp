#include "drinfeld/moore.hpp"

#include <algorithm>
#include <functional>

#include "drinfeld/linalg.hpp"
#include "drinfeld/parallel.hpp"

namespace drinfeld {

std::uint64_t moore_degree(std::uint64_t q, unsigned n) { return (ipow(q, n) - 1) / (q - 1); }

std::vector<MPoly> variables(const TowerPtr& field, unsigned n_vars) {
  std::vector<MPoly> out;
  for (unsigned i = 0; i < n_vars; ++i) out.push_back(MPoly::variable(field, n_vars, i));
  return out;
}

MPoly moore_det(const std::vector<MPoly>& args) {
  if (args.empty()) throw_usage("Moore determinant of no arguments");
  const FieldTower& F = *args.front().field();
  const std::size_t n = args.size();
  PolyMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const MPoly& w : args) m[i].push_back(w.frobenius_p(static_cast<unsigned>(F.e() * i)));
  }
  return det_poly_matrix(m);
}

MPoly moore_product(const std::vector<MPoly>& args) {
  if (args.empty()) throw_usage("Moore product of no arguments");
  const TowerPtr& field = args.front().field();
  const unsigned q = field->q();
  MPoly acc = MPoly::constant(field, args.front().n_vars(), field->one());
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::uint64_t count = ipow(q, static_cast<unsigned>(i));
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      MPoly form = args[i];
      std::uint64_t rest = idx;
      for (std::size_t k = 0; k < i; ++k) {
        const Elem a{static_cast<std::uint32_t>(rest % q)};
        rest /= q;
        if (!a.is_zero()) form += args[k].scaled(a);
      }
      acc *= form;
    }
  }
  return acc;
}

namespace {

void check_budget(std::uint64_t q, unsigned n) {
  if (n == 0) throw_usage("n must be positive");
  const std::uint64_t d = moore_degree(q, n);
  if (d > kMooreDegreeBudget) {
    throw_resource("Moore determinant degree " + std::to_string(d) + " exceeds budget " +
                   std::to_string(kMooreDegreeBudget));
  }
}

MPoly moore_or_one(const std::vector<MPoly>& args, const TowerPtr& field, unsigned n_vars) {
  return args.empty() ? MPoly::constant(field, n_vars, field->one()) : moore_det(args);
}

}  // namespace

CheckReport verify_moore_identity(std::uint64_t q, unsigned n) {
  return run_timed("moore.identity", ojson{{"q", q}, {"n", n}}, [&](CheckReport& r) {
    check_budget(q, n);
    const TowerPtr F = tower_for_q(q);
    r.add_tower(*F);
    const auto w = variables(F, n);
    const MPoly det = moore_det(w);
    const MPoly prod = moore_product(w);
    r.data["degree"] = det.degree();
    r.data["terms"] = det.size();
    r.data["expected_degree"] = moore_degree(q, n);
    if (!(det == prod)) r.fail(ojson{{"difference", (det - prod).to_string()}});
    else if (det.degree() != static_cast<int>(moore_degree(q, n))) {
      r.fail(ojson{{"degree", det.degree()}, {"expected", moore_degree(q, n)}});
    }
  });
}

CheckReport verify_partial_identity(std::uint64_t q, unsigned n) {
  return run_timed("moore.partial", ojson{{"q", q}, {"n", n}}, [&](CheckReport& r) {
    check_budget(q, n);
    const TowerPtr F = tower_for_q(q);
    r.add_tower(*F);
    const auto w = variables(F, n);
    const MPoly det = moore_det(w);
    for (unsigned i = 0; i < n; ++i) {
      std::vector<MPoly> rest;
      for (unsigned k = 0; k < n; ++k) {
        if (k != i) rest.push_back(w[k]);
      }
      MPoly expect = moore_or_one(rest, F, n).frobenius_p(F->e());
      if (i % 2 == 1) expect = -expect;
      const MPoly got = partial(det, i);
      if (!(got == expect)) {
        r.fail(ojson{{"variable", i}, {"partial", got.to_string()}, {"expected", expect.to_string()}});
        return;
      }
    }
  });
}

std::vector<std::vector<unsigned>> subsets(unsigned n, unsigned k) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  std::function<void(unsigned)> rec = [&](unsigned start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (unsigned i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<MPoly> z_c_generators(unsigned n, unsigned c, const TowerPtr& field) {
  if (c < 1 || c > n + 1) throw_usage("codimension c must satisfy 1 <= c <= n+1");
  const auto x = variables(field, n + 1);
  std::vector<MPoly> out;
  for (const auto& I : subsets(n + 1, c - 1)) {
    std::vector<MPoly> args;
    for (unsigned k = 0; k <= n; ++k) {
      if (std::find(I.begin(), I.end(), k) == I.end()) args.push_back(x[k]);
    }
    out.push_back(moore_det(args));
  }
  return out;
}

unsigned stratum_of_point(const ProjPoint& pt) {
  const FieldTower& F = *pt.field();
  const std::size_t n1 = pt.size();
  DenseMatrix m(pt.field(), 0, n1);
  for (std::size_t j = 0; j < n1; ++j) {
    std::vector<Elem> row;
    for (Elem x : pt.coords()) row.push_back(F.frobenius_q(x, static_cast<unsigned>(j)));
    m.append_row(row);
  }
  return static_cast<unsigned>(n1 - rank(m));
}

CheckReport verify_strata_duality(std::uint64_t q, unsigned n, unsigned m) {
  return run_timed("moore.strata", ojson{{"q", q}, {"n", n}, {"m", m}}, [&](CheckReport& r) {
    const TowerPtr base = tower_for_q(q);
    const TowerPtr ext = tower_for_q(q, m);
    r.add_tower(*ext);
    std::vector<std::vector<MPoly>> gens;
    for (unsigned c = 1; c <= n; ++c) gens.push_back(z_c_generators(n, c, base));
    const auto pts = enumerate_projective(ext, n);

    std::vector<unsigned> strata(pts.size());
    std::vector<int> mismatch(pts.size(), -1);
    parallel_for(pts.size(), [&](std::size_t idx) {
      const unsigned s = stratum_of_point(pts[idx]);
      strata[idx] = s;
      for (unsigned c = 1; c <= n; ++c) {
        bool all_vanish = true;
        for (const MPoly& g : gens[c - 1]) {
          if (!evaluate(g, pts[idx].coords(), *ext).is_zero()) {
            all_vanish = false;
            break;
          }
        }
        if (all_vanish != (s >= c)) {
          mismatch[idx] = static_cast<int>(c);
          return;
        }
      }
    });

    std::vector<std::uint64_t> tally(n + 1, 0);
    for (unsigned s : strata) ++tally.at(s);
    std::uint64_t total = 0;
    for (auto t : tally) total += t;
    r.data["stratum_counts"] = tally;
    r.data["points"] = pts.size();
    r.data["expected_points"] = projective_count(ext->size(), n);
    for (std::size_t idx = 0; idx < pts.size(); ++idx) {
      if (mismatch[idx] >= 0) {
        r.fail(ojson{{"point", pts[idx].to_json()}, {"stratum", strata[idx]}, {"codimension", mismatch[idx]}});
        return;
      }
    }
    if (total != projective_count(ext->size(), n)) r.fail(ojson{{"sum", total}});
  });
}

}  // namespace drinfeld
