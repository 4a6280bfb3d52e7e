#pragma once

// Sparse multivariate polynomials over a tower field.

#include <array>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/errors.hpp"
#include "drinfeld/field.hpp"

namespace drinfeld {

inline constexpr unsigned kMaxVars = 8;
inline constexpr unsigned kMaxExponent = 255;

/// Exponent vector packed one byte per variable, x0 in the most significant
/// byte. Ordering is graded: total degree first, then lexicographic with
/// x0 > x1 > ... .
class Monomial {
 public:
  constexpr Monomial() = default;
  static Monomial from_exponents(std::span<const unsigned> exps);
  static Monomial variable(unsigned i, unsigned power = 1);

  unsigned degree() const { return deg_; }
  unsigned exponent(unsigned i) const { return static_cast<unsigned>((bits_ >> (56 - 8 * i)) & 0xff); }
  std::vector<unsigned> exponents(unsigned n_vars) const;
  std::uint64_t bits() const { return bits_; }

  /// Throws ResourceError if some exponent exceeds kMaxExponent.
  Monomial operator*(Monomial other) const;
  bool divides(Monomial other) const;
  /// this / other; requires other.divides(*this).
  Monomial operator/(Monomial other) const;
  Monomial scaled(unsigned k) const;

  friend bool operator==(Monomial a, Monomial b) { return a.bits_ == b.bits_; }
  friend bool operator<(Monomial a, Monomial b) {
    return a.deg_ != b.deg_ ? a.deg_ < b.deg_ : a.bits_ < b.bits_;
  }
  friend bool operator>(Monomial a, Monomial b) { return b < a; }

 private:
  constexpr Monomial(std::uint64_t bits, unsigned deg) : bits_(bits), deg_(deg) {}
  std::uint64_t bits_ = 0;
  unsigned deg_ = 0;
};

struct Term {
  Monomial mono;
  Elem coef;
};

class MPoly {
 public:
  MPoly(TowerPtr field, unsigned n_vars);

  /// Sums duplicate monomials and drops zero coefficients.
  static MPoly from_terms(TowerPtr field, unsigned n_vars, std::vector<Term> terms);
  static MPoly constant(TowerPtr field, unsigned n_vars, Elem c);
  static MPoly variable(TowerPtr field, unsigned n_vars, unsigned i, unsigned power = 1);
  static MPoly monomial(TowerPtr field, unsigned n_vars, Monomial mono, Elem c);

  const TowerPtr& field() const { return field_; }
  unsigned n_vars() const { return n_vars_; }
  /// Terms in decreasing monomial order.
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().mono.degree()); }
  bool is_homogeneous() const;
  const Term& leading() const { return terms_.front(); }
  Elem coefficient(Monomial m) const;

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator-() const;
  MPoly operator*(const MPoly& o) const;
  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  MPoly scaled(Elem c) const;
  MPoly times_monomial(Monomial m, Elem c) const;
  MPoly pow(std::uint64_t k) const;
  /// f^{p^k}, by raising coefficients and scaling exponents.
  MPoly frobenius_p(unsigned k) const;

  friend bool operator==(const MPoly& a, const MPoly& b);

  /// Same polynomial with coefficients read in `target`, a tower over the
  /// same F_q. Allowed when this polynomial's field is F_q or `target` itself.
  MPoly embed(const TowerPtr& target) const;
  /// Same polynomial over F_q; throws UsageError if a coefficient is not in F_q.
  MPoly restrict_to_base() const;
  bool coefficients_in_base() const;
  /// Reinterprets the polynomial in a ring with more variables.
  MPoly with_vars(unsigned n_vars) const;

  std::string to_string() const;
  nlohmann::json to_json() const;
  static MPoly from_json(TowerPtr field, unsigned n_vars, const nlohmann::json& j);

 private:
  void check_compatible(const MPoly& o) const;
  TowerPtr field_;
  unsigned n_vars_;
  std::vector<Term> terms_;
};

class DivisibilityError : public Error {
 public:
  DivisibilityError(const std::string& what, MPoly remainder)
      : Error(what), remainder_(std::move(remainder)) {}
  const MPoly& remainder() const { return remainder_; }

 private:
  MPoly remainder_;
};

struct DivisionResult {
  MPoly quotient;
  MPoly remainder;
};

/// Division by a single polynomial with respect to the graded order.
DivisionResult divide(const MPoly& f, const MPoly& g);
/// f / g; throws DivisibilityError (with the remainder) if g does not divide f.
MPoly exact_divide(const MPoly& f, const MPoly& g);
bool divides(const MPoly& g, const MPoly& f);

/// binom(a, b) mod p by Lucas' theorem.
unsigned binomial_mod_p(unsigned a, unsigned b, unsigned p);

MPoly hasse_derivative(const MPoly& f, std::span<const unsigned> alpha);
MPoly partial(const MPoly& f, unsigned i);

/// Evaluates at a point of `field`, which must be compatible with f's field
/// (see MPoly::embed).
Elem evaluate(const MPoly& f, std::span<const Elem> point, const FieldTower& field);
Elem evaluate(const MPoly& f, std::span<const Elem> point);

/// Ring homomorphism x_i -> images[i]. All images share field and arity.
MPoly substitute(const MPoly& f, std::span<const MPoly> images);

using PolyMatrix = std::vector<std::vector<MPoly>>;

MPoly det_cofactor(const PolyMatrix& m);
MPoly det_bareiss(const PolyMatrix& m);
/// Cofactor expansion up to size 5, fraction-free elimination above.
MPoly det_poly_matrix(const PolyMatrix& m);

/// All monomials of degree d in n variables, in decreasing order.
std::vector<Monomial> monomials_of_degree(unsigned n_vars, unsigned d);

/// Vector fields sum_i coeffs[i] d/dx_i.
class Derivation {
 public:
  explicit Derivation(std::vector<MPoly> coeffs);
  static Derivation zero(TowerPtr field, unsigned n_vars);

  const std::vector<MPoly>& coeffs() const { return coeffs_; }
  unsigned n_vars() const { return static_cast<unsigned>(coeffs_.size()); }
  const TowerPtr& field() const { return coeffs_.front().field(); }

  MPoly apply(const MPoly& f) const;
  Derivation operator+(const Derivation& o) const;
  Derivation operator-(const Derivation& o) const;
  Derivation scaled(Elem c) const;
  /// Multiplies every coefficient by g.
  Derivation times(const MPoly& g) const;

  friend bool operator==(const Derivation& a, const Derivation& b) { return a.coeffs_ == b.coeffs_; }

  nlohmann::json to_json() const;

 private:
  std::vector<MPoly> coeffs_;
};

Derivation lie_bracket(const Derivation& a, const Derivation& b);
/// The derivation x_i -> D^k(x_i) with k = p; a derivation by Jacobson's formula.
Derivation derivation_p_power(const Derivation& d, unsigned p);

/// A monomial chart t_i -> prod_j s_j^{a_ij} with a lower triangular
/// exponent matrix having nonzero diagonal.
class ChartSubstitution {
 public:
  ChartSubstitution(TowerPtr field, std::vector<std::vector<unsigned>> exponents);
  /// t_i -> s_1 s_2 ... s_i (indices from 0).
  static ChartSubstitution standard_chart(TowerPtr field, unsigned n);

  unsigned n_vars() const { return static_cast<unsigned>(exps_.size()); }
  const std::vector<MPoly>& images() const { return images_; }

  MPoly pull_back(const MPoly& f) const;
  /// The derivation D' with D'(pi^* t_i) = pi^*(D t_i); throws
  /// DivisibilityError when D does not lift to a regular field on the chart.
  Derivation pull_back(const Derivation& d) const;
  /// Pullback of the 1-form sum_i w_i dt_i, as ds_j coefficients.
  std::vector<MPoly> pull_back_form(std::span<const MPoly> coeffs) const;

 private:
  TowerPtr field_;
  std::vector<std::vector<unsigned>> exps_;
  std::vector<MPoly> images_;
};

}  // namespace drinfeld
