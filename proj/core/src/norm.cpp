#include "drinfeld/norm.hpp"

#include "drinfeld/linalg.hpp"

namespace drinfeld {

std::size_t rank_over_base(const TowerPtr& ext, const std::vector<Elem>& elems) {
  DenseMatrix m(ext->base(), 0, ext->m());
  for (Elem b : elems) m.append_row(ext->coordinates(b));
  return rank(m);
}

MPoly norm_form(const TowerPtr& ext, const std::vector<Elem>& basis) {
  const unsigned k = static_cast<unsigned>(basis.size());
  if (k == 0 || k > ext->m()) throw_usage("norm form needs between 1 and m basis elements");
  if (rank_over_base(ext, basis) != k) throw DegeneracyError("norm form basis is linearly dependent over F_q");

  MPoly acc = MPoly::constant(ext, k, ext->one());
  for (unsigned i = 0; i < ext->m(); ++i) {
    std::vector<Term> terms;
    for (unsigned j = 0; j < k; ++j) terms.push_back({Monomial::variable(j), ext->frobenius_q(basis[j], i)});
    acc *= MPoly::from_terms(ext, k, std::move(terms));
  }
  if (!acc.coefficients_in_base()) throw InvariantError("norm form has a coefficient outside F_q");
  return acc.restrict_to_base();
}

}  // namespace drinfeld
