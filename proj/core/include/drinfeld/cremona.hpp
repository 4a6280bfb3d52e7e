#pragma once

// The inseparable Cremona-type map psi on P^n and related compositions.

#include <vector>

#include "drinfeld/mpoly.hpp"
#include "drinfeld/projective.hpp"
#include "drinfeld/report.hpp"

namespace drinfeld {

/// n+1 homogeneous components of one common degree.
class RationalMap {
 public:
  explicit RationalMap(std::vector<MPoly> components);

  const std::vector<MPoly>& components() const { return comps_; }
  unsigned n_vars() const { return comps_.front().n_vars(); }
  std::size_t size() const { return comps_.size(); }
  int degree() const;
  const TowerPtr& field() const { return comps_.front().field(); }

  nlohmann::json to_json() const;

 private:
  std::vector<MPoly> comps_;
};

class IndeterminacyError : public Error {
 public:
  explicit IndeterminacyError(ProjPoint pt);
  const ProjPoint& point() const { return pt_; }

 private:
  ProjPoint pt_;
};

/// psi_i = (-1)^i Delta_q(x_0, ..., x_i omitted, ..., x_n).
RationalMap psi_map(unsigned n, const TowerPtr& field);
/// x_i -> x_i^{q^j}.
RationalMap frobenius_map(unsigned n, const TowerPtr& field, unsigned j);

/// Evaluates and normalizes; throws IndeterminacyError if every component vanishes.
ProjPoint apply(const RationalMap& f, const ProjPoint& pt);
/// f after g, by substitution with no cancellation.
RationalMap compose(const RationalMap& f, const RationalMap& g);

/// PASS iff every cross-minor f_i g_j - f_j g_i vanishes identically.
CheckReport proj_equal(const RationalMap& f, const RationalMap& g);

CheckReport verify_graph_relations(unsigned n, std::uint64_t q);
CheckReport verify_psi_squared(unsigned n, std::uint64_t q);
CheckReport verify_phi_bar(unsigned n, std::uint64_t q);
CheckReport verify_omega_endomorphism(unsigned n, std::uint64_t q, unsigned m);
CheckReport flop_local_model(std::uint64_t q, unsigned m);
/// Indeterminacy of psi on P^n(F_{q^m}) against the stratum Z_2.
CheckReport verify_indeterminacy(unsigned n, std::uint64_t q, unsigned m);

}  // namespace drinfeld
