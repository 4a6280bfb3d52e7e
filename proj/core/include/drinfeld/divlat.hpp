#pragma once

// Divisor classes with exact rational coefficients on the blow-up of P^2 at
// its F_q-points, and a coarse ledger for the blow-up of P^3.

#include <boost/rational.hpp>
#include <memory>
#include <string>
#include <vector>

#include "drinfeld/errors.hpp"
#include "drinfeld/projective.hpp"
#include "drinfeld/report.hpp"

namespace drinfeld {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);

class UnsupportedProduct : public Error {
 public:
  using Error::Error;
};

class NotPushforwardError : public Error {
 public:
  using Error::Error;
};

class Lattice;
using LatticePtr = std::shared_ptr<const Lattice>;

/// Surface: basis H, E_0..E_{N-1} over the points of P^2(F_q) in enumeration
/// order. Threefold: basis H, D1, D2, D3 with only H^3 and D*H^2 known.
class Lattice {
 public:
  enum class Kind { Surface, Threefold };

  static LatticePtr surface(std::uint64_t q);
  static LatticePtr threefold(std::uint64_t q);

  Kind kind() const { return kind_; }
  std::uint64_t q() const { return q_; }
  std::size_t rank() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t index_of(const std::string& name) const;
  /// Points of P^2(F_q) indexing the E_i (surface only).
  const std::vector<ProjPoint>& points() const { return points_; }

  /// Product of two basis symbols (surface).
  Rational pair(std::size_t i, std::size_t j) const;
  /// Product of three basis symbols (threefold); throws UnsupportedProduct
  /// unless at least two factors are H.
  Rational triple(std::size_t i, std::size_t j, std::size_t k) const;

 private:
  Lattice(Kind kind, std::uint64_t q) : kind_(kind), q_(q) {}
  Kind kind_;
  std::uint64_t q_;
  std::vector<std::string> names_;
  std::vector<ProjPoint> points_;
};

class DivClass {
 public:
  DivClass(LatticePtr lattice, std::vector<Rational> coeffs);
  static DivClass zero(LatticePtr lattice);
  static DivClass basis(LatticePtr lattice, const std::string& name);

  const LatticePtr& lattice() const { return lat_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational operator[](std::size_t i) const { return coeffs_.at(i); }

  DivClass operator+(const DivClass& o) const;
  DivClass operator-(const DivClass& o) const;
  DivClass operator-() const;
  friend DivClass operator*(const Rational& s, const DivClass& c);
  friend bool operator==(const DivClass& a, const DivClass& b) { return a.coeffs_ == b.coeffs_; }

  /// Nonzero coefficients keyed by symbol name.
  ojson to_json() const;

 private:
  void check_same(const DivClass& o) const;
  LatticePtr lat_;
  std::vector<Rational> coeffs_;
};

Rational intersect(const DivClass& a, const DivClass& b);
Rational intersect(const DivClass& a, const DivClass& b, const DivClass& c);

/// Sum of all E_i.
DivClass total_exceptional(const LatticePtr& lat);
/// H - sum of E_P over the F_q-points of the line with coefficient vector `line`.
DivClass line_class(const LatticePtr& lat, const ProjPoint& line);

struct Pushforward {
  Rational lambda;
  DivClass pullback_of_ey;
};

/// lambda with c = lambda * P(E_Y) modulo the span of the strict transforms of
/// rational lines, where P(E_Y) = E + sum c_i L_i is orthogonal to every L_i.
Pushforward contract_pushforward(const DivClass& c);

struct Discrepancy {
  Rational value;
  bool klt = false;
};
/// a(S) = (m+1)/d - 1 for the cone over a degree-d embedding of P^m.
Discrepancy cone_discrepancy(int m, int d);

CheckReport verify_surface_ledger(std::uint64_t q);
CheckReport pushforward_report(std::uint64_t q);
CheckReport threefold_ledger(std::uint64_t q, std::uint64_t p);
CheckReport discrepancy_report(int m, int d);

}  // namespace drinfeld
