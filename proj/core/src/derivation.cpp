#include "drinfeld/mpoly.hpp"

namespace drinfeld {

Derivation::Derivation(std::vector<MPoly> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw_usage("a derivation needs at least one variable");
  for (const MPoly& c : coeffs_) {
    if (c.field() != coeffs_.front().field() || c.n_vars() != coeffs_.size()) {
      throw_usage("derivation coefficients must share the ring with n_vars = number of coefficients");
    }
  }
}

Derivation Derivation::zero(TowerPtr field, unsigned n_vars) {
  return Derivation(std::vector<MPoly>(n_vars, MPoly(std::move(field), n_vars)));
}

MPoly Derivation::apply(const MPoly& f) const {
  MPoly acc(field(), n_vars());
  for (unsigned i = 0; i < n_vars(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    const MPoly d = partial(f, i);
    if (!d.is_zero()) acc += coeffs_[i] * d;
  }
  return acc;
}

Derivation Derivation::operator+(const Derivation& o) const {
  std::vector<MPoly> c;
  for (unsigned i = 0; i < n_vars(); ++i) c.push_back(coeffs_[i] + o.coeffs_.at(i));
  return Derivation(std::move(c));
}

Derivation Derivation::operator-(const Derivation& o) const {
  std::vector<MPoly> c;
  for (unsigned i = 0; i < n_vars(); ++i) c.push_back(coeffs_[i] - o.coeffs_.at(i));
  return Derivation(std::move(c));
}

Derivation Derivation::scaled(Elem s) const {
  std::vector<MPoly> c;
  for (const MPoly& x : coeffs_) c.push_back(x.scaled(s));
  return Derivation(std::move(c));
}

Derivation Derivation::times(const MPoly& g) const {
  std::vector<MPoly> c;
  for (const MPoly& x : coeffs_) c.push_back(x * g);
  return Derivation(std::move(c));
}

nlohmann::json Derivation::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const MPoly& c : coeffs_) out.push_back(c.to_string());
  return out;
}

Derivation lie_bracket(const Derivation& a, const Derivation& b) {
  std::vector<MPoly> c;
  for (unsigned i = 0; i < a.n_vars(); ++i) c.push_back(a.apply(b.coeffs()[i]) - b.apply(a.coeffs()[i]));
  return Derivation(std::move(c));
}

Derivation derivation_p_power(const Derivation& d, unsigned p) {
  std::vector<MPoly> c;
  for (unsigned i = 0; i < d.n_vars(); ++i) {
    MPoly v = d.coeffs()[i];
    for (unsigned k = 1; k < p; ++k) v = d.apply(v);
    c.push_back(std::move(v));
  }
  return Derivation(std::move(c));
}

// ---------------------------------------------------------------------------

ChartSubstitution::ChartSubstitution(TowerPtr field, std::vector<std::vector<unsigned>> exponents)
    : field_(std::move(field)), exps_(std::move(exponents)) {
  const unsigned n = n_vars();
  for (unsigned i = 0; i < n; ++i) {
    if (exps_[i].size() != n) throw_usage("chart exponent matrix must be square");
    for (unsigned j = i + 1; j < n; ++j) {
      if (exps_[i][j] != 0) throw_usage("chart exponent matrix must be lower triangular");
    }
    if (exps_[i][i] % field_->p() == 0) throw_usage("chart diagonal exponents must be nonzero mod p");
    images_.push_back(MPoly::monomial(field_, n, Monomial::from_exponents(exps_[i]), field_->one()));
  }
}

ChartSubstitution ChartSubstitution::standard_chart(TowerPtr field, unsigned n) {
  std::vector<std::vector<unsigned>> e(n, std::vector<unsigned>(n, 0));
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j <= i; ++j) e[i][j] = 1;
  }
  return ChartSubstitution(std::move(field), std::move(e));
}

MPoly ChartSubstitution::pull_back(const MPoly& f) const { return substitute(f, images_); }

namespace {

// a * T_i / s_j as a polynomial (zero when a = 0).
MPoly jacobian_entry(const TowerPtr& field, const std::vector<std::vector<unsigned>>& exps, unsigned i,
                     unsigned j) {
  const unsigned n = static_cast<unsigned>(exps.size());
  const unsigned a = exps[i][j];
  if (a == 0) return MPoly(field, n);
  std::vector<unsigned> e = exps[i];
  e[j] -= 1;
  return MPoly::monomial(field, n, Monomial::from_exponents(e), field->from_int(a));
}

}  // namespace

Derivation ChartSubstitution::pull_back(const Derivation& d) const {
  const unsigned n = n_vars();
  if (d.n_vars() != n) throw_usage("derivation arity does not match the chart");
  std::vector<MPoly> lifted;
  for (unsigned i = 0; i < n; ++i) {
    MPoly rhs = pull_back(d.coeffs()[i]);
    for (unsigned j = 0; j < i; ++j) {
      const MPoly jac = jacobian_entry(field_, exps_, i, j);
      if (!jac.is_zero()) rhs -= jac * lifted[j];
    }
    lifted.push_back(exact_divide(rhs, jacobian_entry(field_, exps_, i, i)));
  }
  return Derivation(std::move(lifted));
}

std::vector<MPoly> ChartSubstitution::pull_back_form(std::span<const MPoly> coeffs) const {
  const unsigned n = n_vars();
  if (coeffs.size() != n) throw_usage("form arity does not match the chart");
  std::vector<MPoly> pulled;
  for (const MPoly& w : coeffs) pulled.push_back(pull_back(w));
  std::vector<MPoly> out;
  for (unsigned j = 0; j < n; ++j) {
    MPoly acc(field_, n);
    for (unsigned i = j; i < n; ++i) {
      const MPoly jac = jacobian_entry(field_, exps_, i, j);
      if (!jac.is_zero()) acc += pulled[i] * jac;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace drinfeld
