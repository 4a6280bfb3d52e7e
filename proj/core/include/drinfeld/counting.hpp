#pragma once

// Point and subspace enumeration over F_q and its extensions.

#include <cstdint>
#include <vector>

#include "drinfeld/linalg.hpp"
#include "drinfeld/projective.hpp"
#include "drinfeld/report.hpp"

namespace drinfeld {

/// Number of k-dimensional subspaces of F_q^n.
std::uint64_t gaussian_binomial(unsigned n, unsigned k, std::uint64_t q);
/// Ordinary binomial coefficient (0 when k > n).
std::uint64_t binomial(unsigned n, unsigned k);
/// Number of codimension-c rational linear subspaces of P^n.
std::uint64_t subspace_count(unsigned n, unsigned c, std::uint64_t q);

/// Every k-dimensional subspace of F^dim as its reduced row echelon basis,
/// ordered by pivot columns (lexicographic) and then by the free entries.
std::vector<DenseMatrix> rational_subspaces(const TowerPtr& field, unsigned dim, unsigned k);

/// Points of P(W)(ext) for W spanned by the rows of `basis` (entries in F_q).
std::vector<ProjPoint> points_of_subspace(const DenseMatrix& basis, const TowerPtr& ext);

/// Rational points and hyperplanes of P^n(F_q) with their incidence.
struct IncidenceGeometry {
  std::uint64_t q = 0;
  unsigned n = 0;
  TowerPtr field;
  std::vector<ProjPoint> points;
  std::vector<ProjPoint> hyperplanes;  // coefficient vectors of normalized forms
  std::vector<std::vector<bool>> incidence;  // [hyperplane][point]

  static IncidenceGeometry build(std::uint64_t q, unsigned n);
  std::vector<std::size_t> points_on(std::size_t hyperplane) const;
};

/// Sizes of the strata Z_i - Z_{i+1} of P^n(F_{q^m}), i = 0..n.
std::vector<std::uint64_t> stratify_count(std::uint64_t q, unsigned n, unsigned m);

CheckReport count_strata_report(std::uint64_t q, unsigned n, unsigned m);
CheckReport fflag_count_report(std::uint64_t q, unsigned m);
CheckReport betti_b2_report(std::uint64_t q);
CheckReport incidence_report(std::uint64_t q);

}  // namespace drinfeld
