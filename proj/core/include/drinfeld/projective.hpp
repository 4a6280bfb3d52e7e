#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "drinfeld/field.hpp"

namespace drinfeld {

inline constexpr std::uint64_t kEnumerationBudget = 10'000'000;

/// Process-wide cap on enumerated point sets (default kEnumerationBudget).
void set_enumeration_budget(std::uint64_t budget);
std::uint64_t enumeration_budget();

/// A point of projective space with its canonical representative: the first
/// nonzero coordinate equals 1.
class ProjPoint {
 public:
  /// Normalizes `coords`; throws UsageError for the zero vector.
  ProjPoint(TowerPtr field, std::vector<Elem> coords);

  const TowerPtr& field() const { return field_; }
  const std::vector<Elem>& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  Elem operator[](std::size_t i) const { return coords_[i]; }

  /// Coordinatewise x -> x^{q^i}.
  ProjPoint frobenius(unsigned i) const;

  nlohmann::json to_json() const;
  std::string to_text() const { return to_json().dump(); }
  static ProjPoint from_json(TowerPtr field, const nlohmann::json& j);

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return a.coords_ < b.coords_; }

 private:
  TowerPtr field_;
  std::vector<Elem> coords_;
};

/// |P^n(F)| for a field with `field_size` elements.
std::uint64_t projective_count(std::uint64_t field_size, unsigned n);

/// All points of P^n(F) in a fixed order: grouped by the position of the
/// leading 1 (leftmost first), then by the remaining coordinates' codes.
/// Throws ResourceError above `budget` points.
std::vector<ProjPoint> enumerate_projective(const TowerPtr& field, unsigned n,
                                            std::uint64_t budget = enumeration_budget());

}  // namespace drinfeld
