#pragma once

#include <vector>

#include "drinfeld/field.hpp"
#include "drinfeld/mpoly.hpp"

namespace drinfeld {

/// N(u_1..u_k) = prod_{i<r} Fr^i(sum_j u_j b_j) for elements b_j of
/// F_{q^r} (r = ext.m()), returned over F_q. Passing k < r basis elements
/// gives the restriction of the norm form to their span. Throws
/// DegeneracyError when the b_j are linearly dependent over F_q and
/// InvariantError if a coefficient fails to lie in F_q.
MPoly norm_form(const TowerPtr& ext, const std::vector<Elem>& basis);

/// Rank over F_q of elements of F_{q^m}, via their coordinate vectors.
std::size_t rank_over_base(const TowerPtr& ext, const std::vector<Elem>& elems);

}  // namespace drinfeld
