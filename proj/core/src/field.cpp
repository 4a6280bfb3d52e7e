#include "drinfeld/field.hpp"

#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "drinfeld/errors.hpp"

namespace drinfeld {

namespace {

constexpr std::uint32_t kNoLog = std::numeric_limits<std::uint32_t>::max();

// Dense univariate polynomials over a finished tower, low degree first.
using UPoly = std::vector<Elem>;

void trim(UPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

UPoly umod(UPoly a, const UPoly& g, const FieldTower& K) {
  trim(a);
  const std::size_t dg = g.size() - 1;
  const Elem lead_inv = K.inv(g.back());
  while (a.size() > dg) {
    const std::size_t shift = a.size() - 1 - dg;
    const Elem c = K.mul(a.back(), lead_inv);
    for (std::size_t j = 0; j <= dg; ++j) {
      a[shift + j] = K.sub(a[shift + j], K.mul(c, g[j]));
    }
    trim(a);
  }
  return a;
}

UPoly umul(const UPoly& a, const UPoly& b, const FieldTower& K) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, K.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = K.add(r[i + j], K.mul(a[i], b[j]));
    }
  }
  trim(r);
  return r;
}

UPoly upowmod(UPoly base, std::uint64_t k, const UPoly& g, const FieldTower& K) {
  UPoly result{K.one()};
  base = umod(std::move(base), g, K);
  while (k > 0) {
    if (k & 1) result = umod(umul(result, base, K), g, K);
    k >>= 1;
    if (k > 0) base = umod(umul(base, base, K), g, K);
  }
  return result;
}

UPoly ugcd(UPoly a, UPoly b, const FieldTower& K) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = umod(a, b, K);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: g of degree d is irreducible iff gcd(g, x^{|K|^i} - x) = 1 for all
// 1 <= i <= d/2.
bool irreducible(const UPoly& g, const FieldTower& K) {
  const std::size_t d = g.size() - 1;
  if (d <= 1) return d == 1;
  if (g[0].is_zero()) return false;
  const UPoly x{K.zero(), K.one()};
  UPoly h = x;
  for (std::size_t i = 1; i <= d / 2; ++i) {
    h = upowmod(h, K.size(), g, K);
    UPoly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), K.zero());
    diff[1] = K.sub(diff[1], K.one());
    trim(diff);
    if (diff.empty()) return false;
    if (ugcd(g, diff, K).size() != 1) return false;
  }
  return true;
}

// Monic degree-d polynomials over K in lexicographic order of (c_0, ..., c_{d-1}).
UPoly first_irreducible(unsigned d, const FieldTower& K) {
  const std::uint64_t count = ipow(K.size(), d);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    UPoly g(d + 1, K.zero());
    std::uint64_t rest = idx;
    for (unsigned j = d; j-- > 0;) {
      g[j] = Elem{static_cast<std::uint32_t>(rest % K.size())};
      rest /= K.size();
    }
    g[d] = K.one();
    if (irreducible(g, K)) return g;
  }
  throw InvariantError("no irreducible polynomial found");
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) {
      throw_resource("integer power overflows 64 bits");
    }
    r *= base;
  }
  return r;
}

std::pair<unsigned, unsigned> prime_power(std::uint64_t q) {
  if (q < 2) throw_usage("q = " + std::to_string(q) + " is not a prime power");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  unsigned e = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) throw_usage("q = " + std::to_string(q) + " is not a prime power");
  return {static_cast<unsigned>(p), e};
}

class TowerBuilder {
 public:
  // Prime field: find the smallest primitive root.
  static void build_prime(FieldTower& F) {
    const std::uint32_t p = F.p_;
    F.base_modulus_ = {0, 1};
    F.ext_modulus_ = {Elem{0}, Elem{1}};
    for (std::uint32_t g = 1; g < p; ++g) {
      if (try_walk(F, [&](std::uint32_t c) { return static_cast<std::uint32_t>(std::uint64_t{c} * g % p); })) {
        break;
      }
    }
    finish(F);
  }

  // F = K[u]/(modulus) with deg modulus = d >= 2; elements coded base |K|.
  static void build_extension(FieldTower& F, const FieldTower& K, const UPoly& modulus) {
    const std::size_t d = modulus.size() - 1;
    const std::uint32_t k = K.size();
    auto decode = [&](std::uint32_t code) {
      UPoly v(d, K.zero());
      for (std::size_t j = 0; j < d; ++j) {
        v[j] = Elem{code % k};
        code /= k;
      }
      return v;
    };
    auto encode = [&](const UPoly& v) {
      std::uint32_t code = 0;
      for (std::size_t j = v.size(); j-- > 0;) code = code * k + v[j].code;
      return code;
    };
    // Multiplication by u is a shift followed by one reduction step.
    auto times_u = [&](std::uint32_t code) {
      UPoly v = decode(code);
      const Elem top = v[d - 1];
      for (std::size_t j = d - 1; j > 0; --j) v[j] = K.sub(v[j - 1], K.mul(top, modulus[j]));
      v[0] = K.neg(K.mul(top, modulus[0]));
      return encode(v);
    };
    if (!try_walk(F, times_u)) {
      for (std::uint32_t h = 2; h < F.size_; ++h) {
        const UPoly hv = decode(h);
        auto times_h = [&](std::uint32_t code) {
          UPoly prod = umod(umul(decode(code), hv, K), modulus, K);
          prod.resize(d, K.zero());
          return encode(prod);
        };
        if (try_walk(F, times_h)) break;
      }
    }
    finish(F);
  }

 private:
  template <class Step>
  static bool try_walk(FieldTower& F, Step step) {
    const std::uint32_t order = F.size_ - 1;
    F.exp_.assign(2 * std::size_t{order}, 0);
    std::uint32_t cur = 1;
    for (std::uint32_t i = 0; i < order; ++i) {
      if (i > 0 && cur == 1) return false;
      F.exp_[i] = cur;
      cur = step(cur);
    }
    return cur == 1;
  }

  static void finish(FieldTower& F) {
    const std::uint32_t order = F.size_ - 1;
    if (F.exp_.size() != 2 * std::size_t{order} || (order > 0 && F.exp_[0] != 1)) {
      throw InvariantError("primitive element search failed");
    }
    for (std::uint32_t i = 0; i < order; ++i) F.exp_[order + i] = F.exp_[i];
    F.log_.assign(F.size_, kNoLog);
    for (std::uint32_t i = 0; i < order; ++i) F.log_[F.exp_[i]] = i;
    if (F.p_ != 2) {
      F.minus_one_log_ = order / 2;
      F.zech_.assign(order, kNoLog);
      for (std::uint32_t i = 0; i < order; ++i) {
        const std::uint32_t v = F.exp_[i];
        const std::uint32_t low = v % F.p_;
        const std::uint32_t w = v - low + (low + 1) % F.p_;
        F.zech_[i] = (w == 0) ? kNoLog : F.log_[w];
      }
    }
  }

  friend TowerPtr make_tower(unsigned, unsigned, unsigned, std::uint64_t);
};

FieldTower::FieldTower(Key, unsigned p, unsigned e, unsigned m)
    : p_(p), e_(e), m_(m), q_(static_cast<std::uint32_t>(ipow(p, e))),
      size_(static_cast<std::uint32_t>(ipow(p, e * m))) {}

TowerPtr make_tower(unsigned p, unsigned e, unsigned m, std::uint64_t budget) {
  if (!is_prime(p)) throw_usage("characteristic " + std::to_string(p) + " is not prime");
  if (e == 0 || m == 0) throw_usage("tower degrees must be positive");
  const std::uint64_t size = ipow(p, e * m);
  if (size > budget || size > (std::uint64_t{1} << 31)) {
    throw_resource("field of size " + std::to_string(size) + " exceeds budget " +
                   std::to_string(budget));
  }

  static std::recursive_mutex mutex;
  static std::map<std::tuple<unsigned, unsigned, unsigned>, TowerPtr> cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_tuple(p, e, m);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  auto tower = std::make_shared<FieldTower>(FieldTower::Key{}, p, e, m);
  if (e == 1 && m == 1) {
    TowerBuilder::build_prime(*tower);
  } else if (m == 1) {
    const TowerPtr prime = make_tower(p, 1, 1, budget);
    const UPoly g = first_irreducible(e, *prime);
    TowerBuilder::build_extension(*tower, *prime, g);
    tower->base_modulus_.clear();
    for (Elem c : g) tower->base_modulus_.push_back(c.code);
    tower->ext_modulus_ = {Elem{0}, Elem{1}};
  } else {
    const TowerPtr base = make_tower(p, e, 1, budget);
    const UPoly g = first_irreducible(m, *base);
    TowerBuilder::build_extension(*tower, *base, g);
    tower->base_modulus_ = base->base_modulus();
    tower->ext_modulus_ = g;
    tower->base_ = base;
  }
  cache.emplace(key, tower);
  return tower;
}

TowerPtr tower_for_q(std::uint64_t q, unsigned m, std::uint64_t budget) {
  const auto [p, e] = prime_power(q);
  return make_tower(p, e, m, budget);
}

TowerPtr FieldTower::base() const {
  if (m_ == 1) return make_tower(p_, e_, 1);
  return base_;
}

Elem FieldTower::from_int(long long k) const {
  const long long r = ((k % static_cast<long long>(p_)) + p_) % p_;
  return Elem{static_cast<std::uint32_t>(r)};
}

Elem FieldTower::generator() const {
  if (m_ > 1) return Elem{q_};
  if (e_ > 1) return Elem{p_};
  return primitive();
}

Elem FieldTower::add(Elem a, Elem b) const {
  if (p_ == 2) return Elem{a.code ^ b.code};
  if (a.code == 0) return b;
  if (b.code == 0) return a;
  const std::uint32_t order = size_ - 1;
  const std::uint32_t la = log_[a.code];
  const std::uint32_t lb = log_[b.code];
  const std::uint32_t d = lb >= la ? lb - la : lb + order - la;
  const std::uint32_t z = zech_[d];
  if (z == kNoLog) return Elem{0};
  return Elem{exp_[la + z]};
}

Elem FieldTower::neg(Elem a) const {
  if (p_ == 2 || a.code == 0) return a;
  return Elem{exp_[log_[a.code] + minus_one_log_]};
}

Elem FieldTower::inv(Elem a) const {
  if (a.code == 0) throw_usage("zero has no multiplicative inverse");
  const std::uint32_t order = size_ - 1;
  return Elem{exp_[(order - log_[a.code]) % order]};
}

Elem FieldTower::pow(Elem a, std::uint64_t k) const {
  if (k == 0) return one();
  if (a.code == 0) return zero();
  const std::uint64_t order = size_ - 1;
  const std::uint64_t l = (std::uint64_t{log_[a.code]} * (k % order)) % order;
  return Elem{exp_[l]};
}

Elem FieldTower::frobenius_p(Elem x) const {
  if (x.code == 0) return x;
  const std::uint64_t order = size_ - 1;
  return Elem{exp_[(std::uint64_t{log_[x.code]} * p_) % order]};
}

Elem FieldTower::frobenius_q(Elem x, unsigned i) const {
  for (unsigned k = 0; k < i * e_; ++k) x = frobenius_p(x);
  return x;
}

std::vector<Elem> FieldTower::coordinates(Elem x) const {
  std::vector<Elem> out(m_);
  std::uint32_t c = x.code;
  for (unsigned j = 0; j < m_; ++j) {
    out[j] = Elem{c % q_};
    c /= q_;
  }
  return out;
}

Elem FieldTower::from_coordinates(std::span<const Elem> coords) const {
  if (coords.size() != m_) throw_usage("coordinate vector length differs from extension degree");
  std::uint32_t code = 0;
  for (std::size_t j = coords.size(); j-- > 0;) {
    if (coords[j].code >= q_) throw_usage("coordinate is not an element of F_q");
    code = code * q_ + coords[j].code;
  }
  return Elem{code};
}

nlohmann::json FieldTower::base_to_json(std::uint32_t base_code) const {
  if (e_ == 1) return base_code;
  nlohmann::json digits = nlohmann::json::array();
  for (unsigned k = 0; k < e_; ++k) {
    digits.push_back(base_code % p_);
    base_code /= p_;
  }
  return digits;
}

nlohmann::json FieldTower::to_json(Elem x) const {
  if (m_ == 1) return base_to_json(x.code);
  nlohmann::json out = nlohmann::json::array();
  for (Elem c : coordinates(x)) out.push_back(base_to_json(c.code));
  return out;
}

std::string FieldTower::to_text(Elem x) const { return to_json(x).dump(); }

Elem FieldTower::from_json(const nlohmann::json& j) const {
  if (j.is_number_integer()) return from_int(j.get<long long>());
  auto base_from = [&](const nlohmann::json& b) -> std::uint32_t {
    if (e_ == 1) {
      if (!b.is_number_integer()) throw_usage("expected an F_p digit, got " + b.dump());
      return from_int(b.get<long long>()).code;
    }
    if (!b.is_array() || b.size() != e_) {
      throw_usage("expected " + std::to_string(e_) + " F_p digits, got " + b.dump());
    }
    std::uint32_t code = 0;
    for (std::size_t k = e_; k-- > 0;) {
      if (!b[k].is_number_integer()) throw_usage("expected an F_p digit, got " + b[k].dump());
      code = code * p_ + from_int(b[k].get<long long>()).code;
    }
    return code;
  };
  if (m_ == 1) return Elem{base_from(j)};
  if (!j.is_array() || j.size() != m_) {
    throw_usage("expected " + std::to_string(m_) + " F_q coefficients, got " + j.dump());
  }
  std::uint32_t code = 0;
  for (std::size_t k = m_; k-- > 0;) code = code * q_ + base_from(j[k]);
  return Elem{code};
}

nlohmann::ordered_json FieldTower::describe() const {
  nlohmann::ordered_json out;
  out["p"] = p_;
  out["e"] = e_;
  out["m"] = m_;
  out["q"] = q_;
  out["base_modulus"] = base_modulus_;
  nlohmann::ordered_json ext = nlohmann::ordered_json::array();
  for (Elem c : ext_modulus_) ext.push_back(nlohmann::ordered_json::parse(base_to_json(c.code).dump()));
  out["ext_modulus"] = ext;
  return out;
}

}  // namespace drinfeld
