#pragma once

// The vector fields theta_i on P^n and its affine chart, their pullbacks
// under the iterated blow-up chart, and the splitting polynomial.

#include <variant>
#include <vector>

#include "drinfeld/mpoly.hpp"
#include "drinfeld/report.hpp"

namespace drinfeld {

/// sum_k (t_k^{q^i} - t_k) d/dt_k on the chart x_0 = 1 (n variables).
Derivation chart_theta(const TowerPtr& field, unsigned n, unsigned i);
/// sum_k x_k^{q^i} d/dx_k on the cone (n+1 variables).
Derivation cone_theta(const TowerPtr& field, unsigned n, unsigned i);

/// dt_i coefficients (-1)^i Delta_q(1, t_1, .., t_i omitted, .., t_n), i = 1..n.
std::vector<MPoly> omega_chart(const TowerPtr& field, unsigned n);

/// prod_{i=1}^{k} prod_{a in F_q^{k+1-i}} (1 + a_i s_i + a_{i+1} s_i s_{i+1} + ... + a_k s_i..s_k),
/// in the first k of n_vars variables.
MPoly h_polynomial(const TowerPtr& field, unsigned k, unsigned n_vars);

/// Order of vanishing of f along the hyperplane x_i = 0 (f nonzero).
unsigned vanishing_order(const MPoly& f, unsigned i);

CheckReport verify_bracket_identity(unsigned n, std::uint64_t q, unsigned i, unsigned j);
/// Every pair 1 <= i <= j <= n.
CheckReport verify_bracket_all(unsigned n, std::uint64_t q);
/// delta_1^{[p]} = delta_1 on the chart, for every dimension 1..n.
CheckReport verify_p_closed(std::uint64_t q, unsigned n = 3);
CheckReport saito_log_tangent_check(unsigned n, std::uint64_t q);
CheckReport verify_h_identity(unsigned n, std::uint64_t q);
CheckReport chart_pullback_form(unsigned n, std::uint64_t q);
CheckReport chart_pullback_field(unsigned n, std::uint64_t q, unsigned j);

/// Outcome of the exhaustive search when no polynomial exists.
struct NoneWitness {
  std::uint64_t candidates = 0;
  std::uint64_t points = 0;
  ojson to_json() const;
};

/// For q > 2 a form F of degree q(q-1) in three variables with F = 1 at every
/// nonzero vector of F_q^3; for q = 2 the certificate that none exists.
std::variant<MPoly, NoneWitness> splitting_polynomial(std::uint64_t q);
CheckReport splitting_report(std::uint64_t q);

}  // namespace drinfeld
