#pragma once

// Moore determinants and the determinantal strata Z_c of P^n.

#include <vector>

#include "drinfeld/mpoly.hpp"
#include "drinfeld/projective.hpp"
#include "drinfeld/report.hpp"

namespace drinfeld {

inline constexpr unsigned kMooreDegreeBudget = 200;

/// (q^n - 1)/(q - 1).
std::uint64_t moore_degree(std::uint64_t q, unsigned n);

/// det of the matrix with rows (w_1^{q^i}, ..., w_n^{q^i}), i = 0..n-1.
MPoly moore_det(const std::vector<MPoly>& args);
/// Product of all F_q-linear forms in the args whose last nonzero
/// coefficient is 1.
MPoly moore_product(const std::vector<MPoly>& args);

/// The coordinate variables x_0..x_{n-1} of a ring with `n_vars` variables.
std::vector<MPoly> variables(const TowerPtr& field, unsigned n_vars);

CheckReport verify_moore_identity(std::uint64_t q, unsigned n);
CheckReport verify_partial_identity(std::uint64_t q, unsigned n);

/// {Delta_q(x_{I^c}) : I subset {0..n}, |I| = c-1}, I in lexicographic order.
std::vector<MPoly> z_c_generators(unsigned n, unsigned c, const TowerPtr& field);
/// Subsets of {0..n-1} of size k in lexicographic order.
std::vector<std::vector<unsigned>> subsets(unsigned n, unsigned k);

/// (n+1) minus the rank of the matrix with rows Fr^j(x), j = 0..n.
unsigned stratum_of_point(const ProjPoint& pt);

/// Minor vanishing against Frobenius rank on every point of P^n(F_{q^m}).
CheckReport verify_strata_duality(std::uint64_t q, unsigned n, unsigned m);

}  // namespace drinfeld
