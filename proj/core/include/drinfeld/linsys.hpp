#pragma once

// Linear systems of plane and space forms cut out by vanishing conditions at
// points, solved by exact linear algebra.

#include <vector>

#include "drinfeld/mpoly.hpp"
#include "drinfeld/projective.hpp"
#include "drinfeld/report.hpp"

namespace drinfeld {

struct Condition {
  ProjPoint point;
  unsigned multiplicity = 1;  // vanishing to this order; 0 imposes nothing
};

/// Degree-d forms in n+1 variables over F_q (field) with vanishing
/// conditions at points of an extension sharing the base.
struct VanishingProblem {
  unsigned n = 2;
  unsigned degree = 0;
  TowerPtr field;
  std::vector<Condition> conditions;
};

struct SolutionSpace {
  std::size_t dimension = 0;
  /// Reduced echelon basis with pivots in the monomial order; over F_q when
  /// `rational`, otherwise over the field of the condition points.
  std::vector<MPoly> basis;
  bool rational = true;
  ojson to_json() const;
};

/// Smallest M with q^M > d.
unsigned extension_for_degree(std::uint64_t q, unsigned d);

SolutionSpace solve_vanishing(const VanishingProblem& problem);
/// True iff f vanishes to the required order at every condition point.
bool satisfies(const MPoly& f, const std::vector<Condition>& conditions);

/// F_{q^M}-points of every rational linear subspace of codimension c in P^n.
std::vector<ProjPoint> subspace_points(unsigned n, unsigned c, const TowerPtr& ext);

/// Normalized rational linear forms dividing f, with multiplicity.
std::vector<std::pair<MPoly, unsigned>> reducibility_probe(const MPoly& f);

struct AppendixPoint {
  ProjPoint point;
  unsigned q_i = 1;  // curve multiplicity; the system asks for order q_i - 1
};

CheckReport en_dimension_check(unsigned n, unsigned c, std::uint64_t q);
CheckReport vanishing_zero_checks(std::uint64_t q);
CheckReport moving_singularity_check(std::uint64_t q, unsigned m);
/// Rational line factors of each member of the moving-singularity net against
/// the position of its singular point.
CheckReport reducibility_check(std::uint64_t q, unsigned m);
/// `base` defaults to the base field of the first point.
CheckReport imposed_conditions_experiment(unsigned d, const std::vector<AppendixPoint>& points, int s,
                                          TowerPtr base = nullptr);

}  // namespace drinfeld
