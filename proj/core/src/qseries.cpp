#include "moonshine/qseries.hpp"

#include <numeric>
#include <set>
#include <sstream>

#include "moonshine/arith.hpp"
#include "moonshine/error.hpp"

namespace moonshine {

namespace {

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

// Smallest integer >= r.
std::int64_t ceil_int(Rational const& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q.get_si();
}

// Effective lower bound of the true support: the stored valuation when
// nonzero, the bound when the known part is zero, nothing for an exact zero.
std::optional<Rational> effective_valuation(PuiseuxSeries const& s) {
  if (auto v = s.valuation_exponent()) return v;
  return s.bound();
}

}  // namespace

std::optional<Rational> min_bound(std::optional<Rational> const& a, std::optional<Rational> const& b) {
  if (!a) return b;
  if (!b) return a;
  return *a < *b ? a : b;
}

PuiseuxSeries PuiseuxSeries::constant(CycNum c) { return monomial(std::move(c), 0, 1); }

PuiseuxSeries PuiseuxSeries::monomial(CycNum c, Key n, std::int64_t M) {
  Terms t;
  t.emplace(n, std::move(c));
  return from_terms(M, std::move(t), std::nullopt);
}

PuiseuxSeries PuiseuxSeries::from_terms(std::int64_t M, Terms terms, std::optional<Rational> bound) {
  if (M < 1) throw DomainError("exponent denominator must be positive");
  PuiseuxSeries s;
  s.M_ = M;
  s.terms_ = std::move(terms);
  s.bound_ = std::move(bound);
  s.normalize();
  return s;
}

PuiseuxSeries PuiseuxSeries::from_dense(Key first, std::vector<CycNum> const& coeffs) {
  Terms t;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero()) t.emplace(first + static_cast<Key>(i), coeffs[i]);
  return from_terms(1, std::move(t), Rational(first + static_cast<Key>(coeffs.size())));
}

PuiseuxSeries PuiseuxSeries::from_dense(Key first, std::vector<Rational> const& coeffs) {
  std::vector<CycNum> c(coeffs.begin(), coeffs.end());
  return from_dense(first, c);
}

void PuiseuxSeries::normalize() {
  std::optional<Key> limit = bound_numerator();
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero() || (limit && it->first >= *limit))
      it = terms_.erase(it);
    else
      ++it;
  }
  std::int64_t g = M_;
  for (auto const& [k, c] : terms_) {
    g = std::gcd(g, k);
    if (g == 1) break;
  }
  if (g > 1) {
    Terms t;
    for (auto& [k, c] : terms_) t.emplace_hint(t.end(), k / g, std::move(c));
    terms_ = std::move(t);
    M_ /= g;
  }
}

std::optional<PuiseuxSeries::Key> PuiseuxSeries::bound_numerator() const {
  if (!bound_) return std::nullopt;
  return ceil_int(*bound_ * M_);
}

bool PuiseuxSeries::knows(Rational const& e) const { return !bound_ || e < *bound_; }

std::optional<PuiseuxSeries::Key> PuiseuxSeries::valuation() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

std::optional<Rational> PuiseuxSeries::valuation_exponent() const {
  if (terms_.empty()) return std::nullopt;
  return make_rational(terms_.begin()->first, M_);
}

CycNum PuiseuxSeries::leading_coefficient() const {
  if (terms_.empty()) return CycNum();
  return terms_.begin()->second;
}

CycNum PuiseuxSeries::coefficient(Rational const& e) const {
  if (!knows(e)) throw InconclusiveError("coefficient of q^" + e.get_str() + " lies beyond the precision window");
  Rational scaled = e * M_;
  if (scaled.get_den() != 1) return CycNum();
  auto it = terms_.find(scaled.get_num().get_si());
  return it == terms_.end() ? CycNum() : it->second;
}

CycNum PuiseuxSeries::coefficient_at(Key n) const { return coefficient(make_rational(n, M_)); }

PuiseuxSeries PuiseuxSeries::with_denominator(std::int64_t M) const {
  if (M % M_ != 0) throw DomainError("target denominator must be a multiple");
  // Bypasses normalize(); only for internal arithmetic.
  PuiseuxSeries s;
  s.M_ = M;
  s.bound_ = bound_;
  std::int64_t f = M / M_;
  for (auto const& [k, c] : terms_) s.terms_.emplace_hint(s.terms_.end(), k * f, c);
  return s;
}

PuiseuxSeries PuiseuxSeries::truncated(Rational const& e) const {
  PuiseuxSeries s = *this;
  s.bound_ = min_bound(bound_, e);
  s.normalize();
  return s;
}

PuiseuxSeries& PuiseuxSeries::operator+=(PuiseuxSeries const& o) {
  std::int64_t M = lcm64(M_, o.M_);
  if (M != M_) *this = with_denominator(M);
  std::int64_t f = M / o.M_;
  for (auto const& [k, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(k * f, c);
    if (!inserted) it->second += c;
  }
  bound_ = min_bound(bound_, o.bound_);
  normalize();
  return *this;
}

PuiseuxSeries PuiseuxSeries::operator-() const {
  PuiseuxSeries s = *this;
  for (auto& [k, c] : s.terms_) c = -c;
  return s;
}

PuiseuxSeries& PuiseuxSeries::operator-=(PuiseuxSeries const& o) { return *this += -o; }

PuiseuxSeries& PuiseuxSeries::operator*=(CycNum const& c) {
  if (c.is_zero()) {
    terms_.clear();
  } else {
    for (auto& [k, v] : terms_) v *= c;
  }
  normalize();
  return *this;
}

PuiseuxSeries& PuiseuxSeries::operator*=(PuiseuxSeries const& o) {
  // An exact zero annihilates everything, including unknown tails.
  if ((is_exact() && is_zero()) || (o.is_exact() && o.is_zero())) return *this = zero();

  std::optional<Rational> bound;
  if (bound_) bound = min_bound(bound, *bound_ + *effective_valuation(o));
  if (o.bound_) bound = min_bound(bound, *o.bound_ + *effective_valuation(*this));

  std::int64_t M = lcm64(M_, o.M_);
  std::int64_t fa = M / M_;
  std::int64_t fb = M / o.M_;
  std::optional<Key> limit;
  if (bound) limit = ceil_int(*bound * M);

  Terms out;
  for (auto const& [ka, ca] : terms_) {
    for (auto const& [kb, cb] : o.terms_) {
      Key k = ka * fa + kb * fb;
      if (limit && k >= *limit) break;
      auto [it, inserted] = out.try_emplace(k, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  M_ = M;
  terms_ = std::move(out);
  bound_ = std::move(bound);
  normalize();
  return *this;
}

PuiseuxSeries PuiseuxSeries::pow(std::uint64_t n) const {
  PuiseuxSeries result = constant(CycNum(1L));
  PuiseuxSeries base = *this;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n) base *= base;
  }
  return result;
}

PuiseuxSeries PuiseuxSeries::substitute_scaled(std::int64_t a, std::int64_t b, std::int64_t d) const {
  if (a < 1 || d < 1) throw DomainError("substitution needs positive a and d");
  std::int64_t M = M_ * d;
  Terms t;
  for (auto const& [k, c] : terms_) {
    CycNum phase = CycNum::root(M, mod_floor(k * mod_floor(b, M), M));
    t.emplace_hint(t.end(), k * a, c * phase);
  }
  std::optional<Rational> bound;
  if (bound_) bound = *bound_ * a / d;
  return from_terms(M, std::move(t), std::move(bound));
}

PuiseuxSeries PuiseuxSeries::translate(Rational const& k) const {
  std::int64_t v = k.get_den().get_si();
  std::int64_t u = k.get_num().get_si();
  std::int64_t L = M_ * v;
  Terms t;
  for (auto const& [n, c] : terms_) t.emplace_hint(t.end(), n, c * CycNum::root(L, mod_floor(n * u, L)));
  return from_terms(M_, std::move(t), bound_);
}

PuiseuxSeries PuiseuxSeries::log() const {
  if (auto v = valuation(); v && *v < 0) throw DomainError("log needs a series without negative exponents");
  if (!knows(0) || !coefficient_at(0).is_one()) throw DomainError("log needs constant term 1");
  if (is_exact()) {
    if (terms_.size() == 1) return zero();
    throw DomainError("log of an exact non-constant series needs a truncation");
  }
  Key limit = *bound_numerator();
  std::vector<CycNum> g(static_cast<std::size_t>(std::max<Key>(limit, 1)));
  std::vector<std::pair<Key, CycNum>> f;  // nonconstant terms
  for (auto const& [k, c] : terms_)
    if (k > 0) f.emplace_back(k, c);
  for (Key k = 1; k < limit; ++k) {
    CycNum acc = coefficient_at(k) * CycNum(static_cast<long>(k));
    for (auto const& [j, fj] : f) {
      if (j >= k) break;
      CycNum const& gk = g[static_cast<std::size_t>(k - j)];
      if (!gk.is_zero()) acc -= gk * fj * CycNum(static_cast<long>(k - j));
    }
    g[static_cast<std::size_t>(k)] = acc / CycNum(static_cast<long>(k));
  }
  Terms t;
  for (Key k = 1; k < limit; ++k)
    if (!g[static_cast<std::size_t>(k)].is_zero()) t.emplace_hint(t.end(), k, g[static_cast<std::size_t>(k)]);
  return from_terms(M_, std::move(t), bound_);
}

PuiseuxSeries PuiseuxSeries::exp() const {
  if (auto v = valuation(); v && *v <= 0) throw DomainError("exp needs strictly positive valuation");
  if (bound_ && *bound_ <= 0) throw DomainError("exp needs strictly positive valuation");
  if (is_exact()) {
    if (is_zero()) return constant(CycNum(1L));
    throw DomainError("exp of an exact nonzero series needs a truncation");
  }
  Key limit = *bound_numerator();
  std::vector<CycNum> h(static_cast<std::size_t>(limit));
  h[0] = CycNum(1L);
  std::vector<std::pair<Key, CycNum>> g(terms_.begin(), terms_.end());
  for (Key k = 1; k < limit; ++k) {
    CycNum acc;
    for (auto const& [j, gj] : g) {
      if (j > k) break;
      CycNum const& hk = h[static_cast<std::size_t>(k - j)];
      if (!hk.is_zero()) acc += gj * hk * CycNum(static_cast<long>(j));
    }
    h[static_cast<std::size_t>(k)] = acc / CycNum(static_cast<long>(k));
  }
  Terms t;
  for (Key k = 0; k < limit; ++k)
    if (!h[static_cast<std::size_t>(k)].is_zero()) t.emplace_hint(t.end(), k, h[static_cast<std::size_t>(k)]);
  return from_terms(M_, std::move(t), bound_);
}

std::optional<Rational> PuiseuxSeries::first_difference(PuiseuxSeries const& a, PuiseuxSeries const& b) {
  std::int64_t M = lcm64(a.M_, b.M_);
  std::optional<Rational> window = min_bound(a.bound_, b.bound_);
  std::set<Key> keys;
  for (auto const& [k, c] : a.terms_) keys.insert(k * (M / a.M_));
  for (auto const& [k, c] : b.terms_) keys.insert(k * (M / b.M_));
  for (Key k : keys) {
    Rational e = make_rational(k, M);
    if (window && e >= *window) break;
    if (!(a.coefficient(e) == b.coefficient(e))) return e;
  }
  return std::nullopt;
}

std::string PuiseuxSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto exponent_text = [&](Rational const& e) {
    if (e.get_den() == 1) return e.get_str();
    return "(" + e.get_str() + ")";
  };
  for (auto const& [k, c] : terms_) {
    Rational e = make_rational(k, M_);
    std::string coef = c.to_string();
    bool negative = c.is_rational() && c.rational() < 0;
    if (!first) os << (negative ? " - " : " + ");
    else if (negative) os << "-";
    if (negative) coef = Rational(-c.rational()).get_str();
    if (!c.is_rational()) coef = "[" + coef + "]";
    bool unit = c.is_rational() && abs(c.rational()) == 1;
    if (e == 0) {
      os << coef;
    } else {
      if (!unit) os << coef << "*";
      os << "q";
      if (e != 1) os << "^" << exponent_text(e);
    }
    first = false;
  }
  if (bound_) {
    if (!first) os << " + ";
    os << "O(q^" << exponent_text(*bound_) << ")";
  } else if (first) {
    os << "0";
  }
  return os.str();
}

}  // namespace moonshine
