#include "drinfeld/mpoly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

namespace drinfeld {

namespace {

constexpr std::uint64_t kHighBits = 0x8080808080808080ULL;

unsigned shift_of(unsigned i) { return 56 - 8 * i; }

void sort_terms(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
}

}  // namespace

Monomial Monomial::from_exponents(std::span<const unsigned> exps) {
  if (exps.size() > kMaxVars) throw_usage("at most " + std::to_string(kMaxVars) + " variables are supported");
  std::uint64_t bits = 0;
  unsigned deg = 0;
  for (unsigned i = 0; i < exps.size(); ++i) {
    if (exps[i] > kMaxExponent) throw_resource("exponent " + std::to_string(exps[i]) + " exceeds 255");
    bits |= std::uint64_t{exps[i]} << shift_of(i);
    deg += exps[i];
  }
  return {bits, deg};
}

Monomial Monomial::variable(unsigned i, unsigned power) {
  if (i >= kMaxVars) throw_usage("variable index out of range");
  if (power > kMaxExponent) throw_resource("exponent " + std::to_string(power) + " exceeds 255");
  return {std::uint64_t{power} << shift_of(i), power};
}

std::vector<unsigned> Monomial::exponents(unsigned n_vars) const {
  std::vector<unsigned> out(n_vars);
  for (unsigned i = 0; i < n_vars; ++i) out[i] = exponent(i);
  return out;
}

Monomial Monomial::operator*(Monomial o) const {
  const std::uint64_t sum = bits_ + o.bits_;
  const std::uint64_t carries = ((bits_ & o.bits_) | ((bits_ | o.bits_) & ~sum)) & kHighBits;
  if (carries != 0 || sum < bits_) throw_resource("monomial exponent exceeds 255");
  return {sum, deg_ + o.deg_};
}

bool Monomial::divides(Monomial o) const {
  if (deg_ > o.deg_) return false;
  for (unsigned i = 0; i < kMaxVars; ++i) {
    if (exponent(i) > o.exponent(i)) return false;
  }
  return true;
}

Monomial Monomial::operator/(Monomial o) const { return {bits_ - o.bits_, deg_ - o.deg_}; }

Monomial Monomial::scaled(unsigned k) const {
  std::array<unsigned, kMaxVars> e{};
  for (unsigned i = 0; i < kMaxVars; ++i) e[i] = exponent(i) * k;
  return from_exponents(e);
}

// ---------------------------------------------------------------------------

MPoly::MPoly(TowerPtr field, unsigned n_vars) : field_(std::move(field)), n_vars_(n_vars) {
  if (n_vars_ > kMaxVars) throw_usage("at most " + std::to_string(kMaxVars) + " variables are supported");
}

MPoly MPoly::from_terms(TowerPtr field, unsigned n_vars, std::vector<Term> terms) {
  MPoly out(std::move(field), n_vars);
  sort_terms(terms);
  const FieldTower& F = *out.field_;
  for (const Term& t : terms) {
    if (!out.terms_.empty() && out.terms_.back().mono == t.mono) {
      out.terms_.back().coef = F.add(out.terms_.back().coef, t.coef);
      if (out.terms_.back().coef.is_zero()) out.terms_.pop_back();
    } else if (!t.coef.is_zero()) {
      out.terms_.push_back(t);
    }
  }
  return out;
}

MPoly MPoly::constant(TowerPtr field, unsigned n_vars, Elem c) {
  return monomial(std::move(field), n_vars, Monomial{}, c);
}

MPoly MPoly::variable(TowerPtr field, unsigned n_vars, unsigned i, unsigned power) {
  if (i >= n_vars) throw_usage("variable x" + std::to_string(i) + " outside a ring of " + std::to_string(n_vars));
  return monomial(std::move(field), n_vars, Monomial::variable(i, power), Elem{1});
}

MPoly MPoly::monomial(TowerPtr field, unsigned n_vars, Monomial mono, Elem c) {
  MPoly out(std::move(field), n_vars);
  if (!c.is_zero()) out.terms_.push_back({mono, c});
  return out;
}

bool MPoly::is_homogeneous() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const Term& t) { return t.mono.degree() == terms_.front().mono.degree(); });
}

Elem MPoly::coefficient(Monomial m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, Monomial key) { return t.mono > key; });
  return (it != terms_.end() && it->mono == m) ? it->coef : Elem{0};
}

void MPoly::check_compatible(const MPoly& o) const {
  if (field_ != o.field_ || n_vars_ != o.n_vars_) throw_usage("polynomials live in different rings");
}

MPoly MPoly::operator+(const MPoly& o) const {
  check_compatible(o);
  const FieldTower& F = *field_;
  MPoly out(field_, n_vars_);
  out.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->mono > b->mono)) {
      out.terms_.push_back(*a++);
    } else if (a == terms_.end() || b->mono > a->mono) {
      out.terms_.push_back(*b++);
    } else {
      const Elem c = F.add(a->coef, b->coef);
      if (!c.is_zero()) out.terms_.push_back({a->mono, c});
      ++a;
      ++b;
    }
  }
  return out;
}

MPoly MPoly::operator-() const {
  MPoly out = *this;
  for (Term& t : out.terms_) t.coef = field_->neg(t.coef);
  return out;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
  check_compatible(o);
  MPoly out(field_, n_vars_);
  if (is_zero() || o.is_zero()) return out;
  if (terms_.size() == 1) return o.times_monomial(terms_[0].mono, terms_[0].coef);
  if (o.terms_.size() == 1) return times_monomial(o.terms_[0].mono, o.terms_[0].coef);
  const FieldTower& F = *field_;
  std::unordered_map<std::uint64_t, Elem> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const Term& a : terms_) {
    for (const Term& b : o.terms_) {
      Elem& slot = acc[(a.mono * b.mono).bits()];
      slot = F.add(slot, F.mul(a.coef, b.coef));
    }
  }
  out.terms_.reserve(acc.size());
  for (const auto& [bits, c] : acc) {
    if (c.is_zero()) continue;
    std::array<unsigned, kMaxVars> e{};
    for (unsigned i = 0; i < kMaxVars; ++i) e[i] = static_cast<unsigned>((bits >> shift_of(i)) & 0xff);
    out.terms_.push_back({Monomial::from_exponents(e), c});
  }
  sort_terms(out.terms_);
  return out;
}

MPoly MPoly::scaled(Elem c) const {
  MPoly out(field_, n_vars_);
  if (c.is_zero()) return out;
  out.terms_ = terms_;
  for (Term& t : out.terms_) t.coef = field_->mul(t.coef, c);
  return out;
}

MPoly MPoly::times_monomial(Monomial m, Elem c) const {
  MPoly out(field_, n_vars_);
  if (c.is_zero()) return out;
  out.terms_.reserve(terms_.size());
  for (const Term& t : terms_) out.terms_.push_back({t.mono * m, field_->mul(t.coef, c)});
  // Multiplying by a monomial preserves the graded order.
  return out;
}

MPoly MPoly::pow(std::uint64_t k) const {
  MPoly result = constant(field_, n_vars_, field_->one());
  MPoly base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

MPoly MPoly::frobenius_p(unsigned k) const {
  const unsigned factor = static_cast<unsigned>(ipow(field_->p(), k));
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    Elem c = t.coef;
    for (unsigned i = 0; i < k; ++i) c = field_->frobenius_p(c);
    out.push_back({t.mono.scaled(factor), c});
  }
  return from_terms(field_, n_vars_, std::move(out));
}

bool operator==(const MPoly& a, const MPoly& b) {
  if (a.n_vars_ != b.n_vars_ || a.terms_.size() != b.terms_.size()) return false;
  if (a.field_ != b.field_ && !a.terms_.empty()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef) return false;
  }
  return true;
}

MPoly MPoly::embed(const TowerPtr& target) const {
  if (target == field_) return *this;
  if (!target->same_base(*field_) || field_->m() != 1) {
    throw_usage("cannot embed coefficients from " + field_->describe().dump() + " into " +
                target->describe().dump());
  }
  MPoly out = *this;
  out.field_ = target;
  return out;
}

bool MPoly::coefficients_in_base() const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return field_->in_base(t.coef); });
}

MPoly MPoly::restrict_to_base() const {
  if (field_->m() == 1) return *this;
  if (!coefficients_in_base()) throw_usage("polynomial has coefficients outside F_q: " + to_string());
  MPoly out = *this;
  out.field_ = field_->base();
  return out;
}

MPoly MPoly::with_vars(unsigned n_vars) const {
  if (n_vars < n_vars_) {
    for (const Term& t : terms_) {
      for (unsigned i = n_vars; i < n_vars_; ++i) {
        if (t.mono.exponent(i) != 0) throw_usage("polynomial uses a variable being dropped");
      }
    }
  }
  MPoly out = *this;
  out.n_vars_ = n_vars;
  if (n_vars > kMaxVars) throw_usage("too many variables");
  return out;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const Term& t : terms_) {
    if (!out.empty()) out += "+";
    out += field_->to_text(t.coef);
    for (unsigned i = 0; i < n_vars_; ++i) {
      const unsigned e = t.mono.exponent(i);
      if (e == 0) continue;
      out += "*x" + std::to_string(i);
      if (e > 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

nlohmann::json MPoly::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const Term& t : terms_) {
    out.push_back(nlohmann::json::array({t.mono.exponents(n_vars_), field_->to_text(t.coef)}));
  }
  return out;
}

MPoly MPoly::from_json(TowerPtr field, unsigned n_vars, const nlohmann::json& j) {
  if (!j.is_array()) throw_usage("polynomial JSON must be an array of terms");
  std::vector<Term> terms;
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2) throw_usage("bad polynomial term " + term.dump());
    const auto exps = term[0].get<std::vector<unsigned>>();
    if (exps.size() != n_vars) throw_usage("term arity mismatch in " + term.dump());
    const auto& c = term[1];
    const Elem coef = c.is_string() ? field->from_json(nlohmann::json::parse(c.get<std::string>()))
                                    : field->from_json(c);
    terms.push_back({Monomial::from_exponents(exps), coef});
  }
  return from_terms(std::move(field), n_vars, std::move(terms));
}

// ---------------------------------------------------------------------------

DivisionResult divide(const MPoly& f, const MPoly& g) {
  if (g.is_zero()) throw_usage("division by the zero polynomial");
  if (f.field() != g.field() || f.n_vars() != g.n_vars()) throw_usage("division across different rings");
  const FieldTower& F = *f.field();
  const Term lead = g.leading();
  const Elem lead_inv = F.inv(lead.coef);

  if (g.size() == 1) {
    std::vector<Term> q, r;
    for (const Term& t : f.terms()) {
      if (lead.mono.divides(t.mono)) q.push_back({t.mono / lead.mono, F.mul(t.coef, lead_inv)});
      else r.push_back(t);
    }
    return {MPoly::from_terms(f.field(), f.n_vars(), std::move(q)),
            MPoly::from_terms(f.field(), f.n_vars(), std::move(r))};
  }

  std::map<Monomial, Elem, std::greater<>> work;
  for (const Term& t : f.terms()) work.emplace(t.mono, t.coef);
  std::vector<Term> q, r;
  while (!work.empty()) {
    const auto it = work.begin();
    const Term top{it->first, it->second};
    work.erase(it);
    if (!lead.mono.divides(top.mono)) {
      r.push_back(top);
      continue;
    }
    const Monomial qm = top.mono / lead.mono;
    const Elem qc = F.mul(top.coef, lead_inv);
    q.push_back({qm, qc});
    for (std::size_t k = 1; k < g.size(); ++k) {
      const Term& gt = g.terms()[k];
      const Monomial mm = gt.mono * qm;
      const Elem delta = F.neg(F.mul(gt.coef, qc));
      auto [slot, inserted] = work.emplace(mm, delta);
      if (!inserted) {
        slot->second = F.add(slot->second, delta);
        if (slot->second.is_zero()) work.erase(slot);
      }
    }
  }
  return {MPoly::from_terms(f.field(), f.n_vars(), std::move(q)),
          MPoly::from_terms(f.field(), f.n_vars(), std::move(r))};
}

MPoly exact_divide(const MPoly& f, const MPoly& g) {
  DivisionResult res = divide(f, g);
  if (!res.remainder.is_zero()) {
    throw DivisibilityError("division is not exact; remainder " + res.remainder.to_string(),
                            std::move(res.remainder));
  }
  return std::move(res.quotient);
}

bool divides(const MPoly& g, const MPoly& f) { return divide(f, g).remainder.is_zero(); }

unsigned binomial_mod_p(unsigned a, unsigned b, unsigned p) {
  unsigned result = 1;
  while (a > 0 || b > 0) {
    const unsigned ad = a % p, bd = b % p;
    if (bd > ad) return 0;
    // small binomial of digits, computed exactly then reduced
    std::uint64_t c = 1;
    for (unsigned i = 0; i < bd; ++i) c = c * (ad - i) / (i + 1);
    result = static_cast<unsigned>((result * (c % p)) % p);
    a /= p;
    b /= p;
  }
  return result;
}

MPoly hasse_derivative(const MPoly& f, std::span<const unsigned> alpha) {
  if (alpha.size() != f.n_vars()) throw_usage("Hasse derivative multi-index has the wrong length");
  const FieldTower& F = *f.field();
  const Monomial am = Monomial::from_exponents(alpha);
  std::vector<Term> out;
  for (const Term& t : f.terms()) {
    if (!am.divides(t.mono)) continue;
    unsigned c = 1;
    for (unsigned i = 0; i < f.n_vars() && c != 0; ++i) {
      c = (c * binomial_mod_p(t.mono.exponent(i), alpha[i], F.p())) % F.p();
    }
    if (c == 0) continue;
    out.push_back({t.mono / am, F.mul(F.from_int(c), t.coef)});
  }
  return MPoly::from_terms(f.field(), f.n_vars(), std::move(out));
}

MPoly partial(const MPoly& f, unsigned i) {
  std::vector<unsigned> alpha(f.n_vars(), 0);
  alpha.at(i) = 1;
  return hasse_derivative(f, alpha);
}

Elem evaluate(const MPoly& f, std::span<const Elem> point, const FieldTower& F) {
  if (point.size() != f.n_vars()) {
    throw_usage("evaluation point has " + std::to_string(point.size()) + " coordinates, expected " +
                std::to_string(f.n_vars()));
  }
  if (&F != f.field().get() && !(F.same_base(*f.field()) && f.field()->m() == 1)) {
    throw_usage("evaluation field is not compatible with the coefficient field");
  }
  if (f.is_zero()) return F.zero();
  // Cache powers per variable up to the largest exponent that occurs.
  std::array<std::vector<Elem>, kMaxVars> powers;
  std::array<unsigned, kMaxVars> max_exp{};
  for (const Term& t : f.terms()) {
    for (unsigned i = 0; i < f.n_vars(); ++i) max_exp[i] = std::max(max_exp[i], t.mono.exponent(i));
  }
  for (unsigned i = 0; i < f.n_vars(); ++i) {
    powers[i].resize(max_exp[i] + 1);
    powers[i][0] = F.one();
    for (unsigned k = 1; k <= max_exp[i]; ++k) powers[i][k] = F.mul(powers[i][k - 1], point[i]);
  }
  Elem acc = F.zero();
  for (const Term& t : f.terms()) {
    Elem v = t.coef;
    for (unsigned i = 0; i < f.n_vars() && !v.is_zero(); ++i) v = F.mul(v, powers[i][t.mono.exponent(i)]);
    acc = F.add(acc, v);
  }
  return acc;
}

Elem evaluate(const MPoly& f, std::span<const Elem> point) { return evaluate(f, point, *f.field()); }

MPoly substitute(const MPoly& f, std::span<const MPoly> images) {
  if (images.size() != f.n_vars()) throw_usage("substitution needs one image per variable");
  if (images.empty()) return f;
  const TowerPtr& field = images.front().field();
  const unsigned n = images.front().n_vars();
  for (const MPoly& g : images) {
    if (g.field() != field || g.n_vars() != n) throw_usage("substitution images live in different rings");
  }
  const MPoly fe = f.embed(field);
  // Memoized powers of each image.
  std::vector<std::map<unsigned, MPoly>> cache(images.size());
  auto power = [&](unsigned i, unsigned k) -> const MPoly& {
    auto it = cache[i].find(k);
    if (it != cache[i].end()) return it->second;
    return cache[i].emplace(k, images[i].pow(k)).first->second;
  };
  MPoly acc(field, n);
  for (const Term& t : fe.terms()) {
    MPoly term = MPoly::constant(field, n, t.coef);
    for (unsigned i = 0; i < f.n_vars(); ++i) {
      const unsigned e = t.mono.exponent(i);
      if (e) term = term * power(i, e);
    }
    acc += term;
  }
  return acc;
}

namespace {

void check_square(const PolyMatrix& m) {
  for (const auto& row : m) {
    if (row.size() != m.size()) throw_usage("determinant of a non-square polynomial matrix");
  }
}

}  // namespace

MPoly det_cofactor(const PolyMatrix& m) {
  check_square(m);
  const std::size_t n = m.size();
  if (n == 0) throw_usage("determinant of an empty matrix");
  const TowerPtr& field = m[0][0].field();
  const unsigned nv = m[0][0].n_vars();
  // minors[mask] = det of the bottom rows restricted to the columns in mask,
  // built from the last row upward.
  std::vector<MPoly> minors(std::size_t{1} << n, MPoly(field, nv));
  minors[0] = MPoly::constant(field, nv, field->one());
  for (std::size_t r = n; r-- > 0;) {
    const unsigned need = static_cast<unsigned>(n - r);
    std::vector<MPoly> next(std::size_t{1} << n, MPoly(field, nv));
    for (std::size_t mask = 0; mask < next.size(); ++mask) {
      if (static_cast<unsigned>(__builtin_popcountll(mask)) != need) continue;
      MPoly acc(field, nv);
      unsigned pos = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (!(mask >> c & 1)) continue;
        const MPoly& sub = minors[mask & ~(std::size_t{1} << c)];
        if (!m[r][c].is_zero() && !sub.is_zero()) {
          MPoly prod = m[r][c] * sub;
          acc = (pos % 2 == 0) ? acc + prod : acc - prod;
        }
        ++pos;
      }
      next[mask] = std::move(acc);
    }
    minors = std::move(next);
  }
  return minors[(std::size_t{1} << n) - 1];
}

MPoly det_bareiss(const PolyMatrix& input) {
  check_square(input);
  PolyMatrix m = input;
  const std::size_t n = m.size();
  if (n == 0) throw_usage("determinant of an empty matrix");
  const TowerPtr& field = m[0][0].field();
  const unsigned nv = m[0][0].n_vars();
  MPoly prev = MPoly::constant(field, nv, field->one());
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero()) ++piv;
      if (piv == n) return MPoly(field, nv);
      std::swap(m[k], m[piv]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const MPoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        try {
          m[i][j] = exact_divide(num, prev);
        } catch (const DivisibilityError& err) {
          throw InvariantError(std::string("fraction-free elimination produced an inexact step: ") + err.what());
        }
      }
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

MPoly det_poly_matrix(const PolyMatrix& m) { return m.size() <= 5 ? det_cofactor(m) : det_bareiss(m); }

std::vector<Monomial> monomials_of_degree(unsigned n_vars, unsigned d) {
  std::vector<Monomial> out;
  std::vector<unsigned> e(n_vars, 0);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned i, unsigned left) {
    if (i + 1 == n_vars) {
      e[i] = left;
      out.push_back(Monomial::from_exponents(e));
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      e[i] = k;
      rec(i + 1, left - k);
    }
  };
  if (n_vars == 0) {
    if (d == 0) out.push_back(Monomial{});
    return out;
  }
  rec(0, d);
  return out;
}

}  // namespace drinfeld
