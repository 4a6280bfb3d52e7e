#include "drinfeld/projective.hpp"

#include <atomic>
#include <utility>

#include "drinfeld/errors.hpp"

namespace drinfeld {

namespace {
std::atomic<std::uint64_t> g_budget{kEnumerationBudget};
}

void set_enumeration_budget(std::uint64_t budget) { g_budget = budget; }
std::uint64_t enumeration_budget() { return g_budget; }

ProjPoint::ProjPoint(TowerPtr field, std::vector<Elem> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  const FieldTower& F = *field_;
  std::size_t lead = 0;
  while (lead < coords_.size() && coords_[lead].is_zero()) ++lead;
  if (lead == coords_.size()) throw_usage("the zero vector is not a projective point");
  const Elem inv = F.inv(coords_[lead]);
  for (std::size_t i = lead; i < coords_.size(); ++i) coords_[i] = F.mul(coords_[i], inv);
}

ProjPoint ProjPoint::frobenius(unsigned i) const {
  std::vector<Elem> c = coords_;
  for (Elem& x : c) x = field_->frobenius_q(x, i);
  return ProjPoint(field_, std::move(c));
}

nlohmann::json ProjPoint::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (Elem x : coords_) out.push_back(field_->to_json(x));
  return out;
}

ProjPoint ProjPoint::from_json(TowerPtr field, const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw_usage("a point must be a nonempty JSON array, got " + j.dump());
  std::vector<Elem> coords;
  for (const auto& c : j) coords.push_back(field->from_json(c));
  return ProjPoint(std::move(field), std::move(coords));
}

std::uint64_t projective_count(std::uint64_t field_size, unsigned n) {
  return (ipow(field_size, n + 1) - 1) / (field_size - 1);
}

std::vector<ProjPoint> enumerate_projective(const TowerPtr& field, unsigned n, std::uint64_t budget) {
  const std::uint64_t total = projective_count(field->size(), n);
  if (total > budget) {
    throw_resource("P^" + std::to_string(n) + " over a field of size " + std::to_string(field->size()) +
                   " has " + std::to_string(total) + " points, above budget " + std::to_string(budget));
  }
  std::vector<ProjPoint> out;
  out.reserve(total);
  const std::uint32_t N = field->size();
  for (unsigned lead = 0; lead <= n; ++lead) {
    const unsigned free = n - lead;
    const std::uint64_t count = ipow(N, free);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<Elem> c(n + 1, Elem{0});
      c[lead] = Elem{1};
      std::uint64_t rest = idx;
      for (unsigned k = n; k > lead; --k) {
        c[k] = Elem{static_cast<std::uint32_t>(rest % N)};
        rest /= N;
      }
      out.emplace_back(field, std::move(c));
    }
  }
  return out;
}

}  // namespace drinfeld
