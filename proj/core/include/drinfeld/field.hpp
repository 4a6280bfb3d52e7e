#pragma once

// Finite field towers F_p ⊂ F_q = F_{p^e} ⊂ F_{q^m}.
//
// An element of F_{q^m} is a polynomial of degree < m over F_q, whose
// coefficients are polynomials of degree < e over F_p. Elements are stored as
// an integer code: the base-p digits of the code, least significant first, are
// the F_p coefficients in the order (coeff 0 of ext coeff 0, coeff 1 of ext
// coeff 0, ..., coeff 0 of ext coeff 1, ...). Consequently an element of F_q
// has the same code in every tower over it, and F_p ⊂ F_q is {0, ..., p-1}.

#include <compare>
#include <cstdint>
#include <memory>
#include <nlohmann/json.hpp>
#include <ranges>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace drinfeld {

struct Elem {
  std::uint32_t code = 0;

  friend constexpr auto operator<=>(Elem, Elem) = default;
  constexpr bool is_zero() const { return code == 0; }
};

inline constexpr std::uint64_t kDefaultFieldBudget = std::uint64_t{1} << 20;

class FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;

class FieldTower {
  struct Key {};

 public:
  FieldTower(Key, unsigned p, unsigned e, unsigned m);

  unsigned p() const { return p_; }
  unsigned e() const { return e_; }
  unsigned m() const { return m_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t size() const { return size_; }

  /// Monic F_p-polynomial of degree e, low degree first.
  const std::vector<std::uint32_t>& base_modulus() const { return base_modulus_; }
  /// Monic F_q-polynomial of degree m, low degree first.
  const std::vector<Elem>& ext_modulus() const { return ext_modulus_; }

  /// The tower (p, e, 1), i.e. F_q itself.
  TowerPtr base() const;
  /// True when both towers have the same F_q (equal p and e).
  bool same_base(const FieldTower& other) const { return p_ == other.p_ && e_ == other.e_; }

  Elem zero() const { return {0}; }
  Elem one() const { return {1}; }
  /// Image of an integer under Z -> F_p ⊂ F_{q^m}.
  Elem from_int(long long k) const;
  /// Class of the top-level adjoined variable (u with ext_modulus(u) = 0, or t
  /// with base_modulus(t) = 0 when m = 1).
  Elem generator() const;
  /// Fixed primitive element used for the log tables.
  Elem primitive() const { return {exp_[1]}; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const {
    if (a.code == 0 || b.code == 0) return {0};
    return {exp_[log_[a.code] + log_[b.code]]};
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const;

  /// x -> x^p.
  Elem frobenius_p(Elem x) const;
  /// x -> x^{q^i}, by repeated p-th powering.
  Elem frobenius_q(Elem x, unsigned i) const;
  /// The unique y with y^q = x, namely x^{q^{m-1}}.
  Elem qth_root(Elem x) const { return frobenius_q(x, m_ - 1); }
  /// Membership in F_q, by Frobenius invariance.
  bool in_base(Elem x) const { return frobenius_q(x, 1) == x; }

  /// The m coefficients over F_q (as F_q codes), low degree first.
  std::vector<Elem> coordinates(Elem x) const;
  Elem from_coordinates(std::span<const Elem> coords) const;

  /// Nested little-endian coefficient lists, e.g. "[1,1]" for t+1 in F_4.
  std::string to_text(Elem x) const;
  nlohmann::json to_json(Elem x) const;
  /// Inverse of to_json; a bare integer is read through from_int.
  Elem from_json(const nlohmann::json& j) const;

  auto elements() const {
    return std::views::iota(std::uint32_t{0}, size_) |
           std::views::transform([](std::uint32_t c) { return Elem{c}; });
  }

  /// p, e, m and both moduli; reproducibility record for reports.
  nlohmann::ordered_json describe() const;

 private:
  friend TowerPtr make_tower(unsigned, unsigned, unsigned, std::uint64_t);
  friend class TowerBuilder;

  nlohmann::json base_to_json(std::uint32_t base_code) const;

  unsigned p_, e_, m_;
  std::uint32_t q_, size_;
  std::vector<std::uint32_t> base_modulus_;
  std::vector<Elem> ext_modulus_;
  // exp_ has length 2(size-1) so products never need a modulo.
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  // Zech logarithms for odd p: zech_[k] = log(1 + g^k), or kNoLog.
  std::vector<std::uint32_t> zech_;
  std::uint32_t minus_one_log_ = 0;
  TowerPtr base_;
};

/// Deterministic tower for (p, e, m); the result is cached and shared.
/// Throws UsageError for non-prime p or zero degrees, ResourceError when
/// p^{em} exceeds `budget`.
TowerPtr make_tower(unsigned p, unsigned e, unsigned m, std::uint64_t budget = kDefaultFieldBudget);

/// Tower F_q ⊂ F_{q^m} for a prime power q.
TowerPtr tower_for_q(std::uint64_t q, unsigned m = 1, std::uint64_t budget = kDefaultFieldBudget);

bool is_prime(std::uint64_t n);
/// (p, e) with q = p^e; throws UsageError when q is not a prime power.
std::pair<unsigned, unsigned> prime_power(std::uint64_t q);

/// Checked integer power; throws ResourceError on overflow of 64 bits.
std::uint64_t ipow(std::uint64_t base, unsigned exp);

}  // namespace drinfeld
