#include "moonshine/biseries.hpp"

#include <numeric>
#include <set>

#include "moonshine/error.hpp"

namespace moonshine {

namespace {

std::int64_t ceil_int(Rational const& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q.get_si();
}

bool exact_zero(PuiseuxSeries const& s) { return s.is_exact() && s.is_zero(); }

}  // namespace

BiSeries BiSeries::one() { return in_q(PuiseuxSeries::constant(CycNum(1L))); }

BiSeries BiSeries::monomial(CycNum c, Key m, Key n, std::int64_t Mp, std::int64_t Mq) {
  Rows rows;
  rows.emplace(m, PuiseuxSeries::monomial(std::move(c), n, Mq));
  return from_rows(Mp, std::move(rows), std::nullopt);
}

BiSeries BiSeries::from_rows(std::int64_t Mp, Rows rows, std::optional<Rational> p_bound) {
  if (Mp < 1) throw DomainError("exponent denominator must be positive");
  BiSeries s;
  s.Mp_ = Mp;
  s.rows_ = std::move(rows);
  s.p_bound_ = std::move(p_bound);
  s.normalize();
  return s;
}

BiSeries BiSeries::in_p(PuiseuxSeries const& s) {
  Rows rows;
  for (auto const& [k, c] : s.terms()) rows.emplace(k, PuiseuxSeries::constant(c));
  return from_rows(s.denominator(), std::move(rows), s.bound());
}

BiSeries BiSeries::in_q(PuiseuxSeries const& s) {
  Rows rows;
  rows.emplace(0, s);
  return from_rows(1, std::move(rows), std::nullopt);
}

void BiSeries::normalize() {
  std::optional<Key> limit = p_bound_numerator();
  for (auto it = rows_.begin(); it != rows_.end();) {
    if (exact_zero(it->second) || (limit && it->first >= *limit))
      it = rows_.erase(it);
    else
      ++it;
  }
  std::int64_t g = Mp_;
  for (auto const& [k, r] : rows_) {
    g = std::gcd(g, k);
    if (g == 1) break;
  }
  if (g > 1) {
    Rows r;
    for (auto& [k, s] : rows_) r.emplace_hint(r.end(), k / g, std::move(s));
    rows_ = std::move(r);
    Mp_ /= g;
  }
}

std::optional<BiSeries::Key> BiSeries::p_bound_numerator() const {
  if (!p_bound_) return std::nullopt;
  return ceil_int(*p_bound_ * Mp_);
}

PuiseuxSeries BiSeries::row(Rational const& e) const {
  if (p_bound_ && e >= *p_bound_) throw InconclusiveError("p^" + e.get_str() + " lies beyond the precision window");
  Rational scaled = e * Mp_;
  if (scaled.get_den() != 1) return PuiseuxSeries::zero();
  auto it = rows_.find(scaled.get_num().get_si());
  return it == rows_.end() ? PuiseuxSeries::zero() : it->second;
}

bool BiSeries::knows(Rational const& m, Rational const& n) const {
  if (p_bound_ && m >= *p_bound_) return false;
  return row(m).knows(n);
}

CycNum BiSeries::coefficient(Rational const& m, Rational const& n) const { return row(m).coefficient(n); }

BiSeries BiSeries::with_p_denominator(std::int64_t Mp) const {
  if (Mp % Mp_ != 0) throw DomainError("target denominator must be a multiple");
  BiSeries s;
  s.Mp_ = Mp;
  s.p_bound_ = p_bound_;
  std::int64_t f = Mp / Mp_;
  for (auto const& [k, r] : rows_) s.rows_.emplace_hint(s.rows_.end(), k * f, r);
  return s;
}

BiSeries& BiSeries::operator+=(BiSeries const& o) {
  std::int64_t Mp = std::lcm(Mp_, o.Mp_);
  if (Mp != Mp_) *this = with_p_denominator(Mp);
  std::int64_t f = Mp / o.Mp_;
  for (auto const& [k, r] : o.rows_) {
    auto [it, inserted] = rows_.try_emplace(k * f, r);
    if (!inserted) it->second += r;
  }
  p_bound_ = min_bound(p_bound_, o.p_bound_);
  normalize();
  return *this;
}

BiSeries BiSeries::operator-() const {
  BiSeries s = *this;
  for (auto& [k, r] : s.rows_) r = -r;
  return s;
}

BiSeries& BiSeries::operator-=(BiSeries const& o) { return *this += -o; }

BiSeries& BiSeries::operator*=(CycNum const& c) {
  for (auto& [k, r] : rows_) r *= c;
  normalize();
  return *this;
}

BiSeries& BiSeries::operator*=(BiSeries const& o) {
  auto lowest = [](BiSeries const& s) -> std::optional<Rational> {
    if (!s.rows_.empty()) return make_rational(s.rows_.begin()->first, s.Mp_);
    return s.p_bound_;
  };
  bool a_zero = p_bound_ == std::nullopt && rows_.empty();
  bool b_zero = o.p_bound_ == std::nullopt && o.rows_.empty();
  if (a_zero || b_zero) return *this = zero();

  std::optional<Rational> bound;
  if (p_bound_) bound = min_bound(bound, *p_bound_ + *lowest(o));
  if (o.p_bound_) bound = min_bound(bound, *o.p_bound_ + *lowest(*this));

  std::int64_t Mp = std::lcm(Mp_, o.Mp_);
  std::int64_t fa = Mp / Mp_;
  std::int64_t fb = Mp / o.Mp_;
  std::optional<Key> limit;
  if (bound) limit = ceil_int(*bound * Mp);

  Rows out;
  for (auto const& [ka, ra] : rows_) {
    for (auto const& [kb, rb] : o.rows_) {
      Key k = ka * fa + kb * fb;
      if (limit && k >= *limit) break;
      auto [it, inserted] = out.try_emplace(k, ra * rb);
      if (!inserted) it->second += ra * rb;
    }
  }
  Mp_ = Mp;
  rows_ = std::move(out);
  p_bound_ = std::move(bound);
  normalize();
  return *this;
}

BiSeries BiSeries::substitute_powers(std::int64_t i) const {
  if (i < 1) throw DomainError("power substitution needs i >= 1");
  Rows rows;
  for (auto const& [k, r] : rows_) rows.emplace_hint(rows.end(), k * i, r.substitute_scaled(i, 0, 1));
  std::optional<Rational> bound;
  if (p_bound_) bound = *p_bound_ * i;
  return from_rows(Mp_, std::move(rows), std::move(bound));
}

BiSeries BiSeries::truncated_p(Rational const& e) const {
  BiSeries s = *this;
  s.p_bound_ = min_bound(p_bound_, e);
  s.normalize();
  return s;
}

BiSeries BiSeries::log() const {
  auto it0 = rows_.find(0);
  if (rows_.empty() || rows_.begin()->first < 0 || it0 == rows_.end() ||
      !(it0->second == PuiseuxSeries::constant(CycNum(1L))))
    throw DomainError("log needs the p^0 row to be exactly 1 with nothing below it");
  if (!p_bound_) {
    if (rows_.size() == 1) return zero();
    throw DomainError("log of an exact non-constant series needs a truncation");
  }
  Key limit = *p_bound_numerator();
  std::vector<PuiseuxSeries> g(static_cast<std::size_t>(std::max<Key>(limit, 1)));
  for (Key m = 1; m < limit; ++m) {
    PuiseuxSeries acc = row(make_rational(m, Mp_)) * CycNum(static_cast<long>(m));
    for (auto const& [j, u] : rows_) {
      if (j == 0) continue;
      if (j >= m) break;
      PuiseuxSeries const& gj = g[static_cast<std::size_t>(m - j)];
      if (!exact_zero(gj)) acc -= gj * u * CycNum(static_cast<long>(m - j));
    }
    g[static_cast<std::size_t>(m)] = acc * CycNum(Rational(1, m));
  }
  Rows rows;
  for (Key m = 1; m < limit; ++m) rows.emplace_hint(rows.end(), m, std::move(g[static_cast<std::size_t>(m)]));
  return from_rows(Mp_, std::move(rows), p_bound_);
}

BiSeries BiSeries::exp() const {
  if (!rows_.empty() && rows_.begin()->first <= 0) throw DomainError("exp needs every row strictly above p^0");
  if (p_bound_ && *p_bound_ <= 0) throw DomainError("exp needs every row strictly above p^0");
  if (!p_bound_) {
    if (rows_.empty()) return one();
    throw DomainError("exp of an exact nonzero series needs a truncation");
  }
  Key limit = *p_bound_numerator();
  std::vector<PuiseuxSeries> h(static_cast<std::size_t>(limit));
  h[0] = PuiseuxSeries::constant(CycNum(1L));
  for (Key m = 1; m < limit; ++m) {
    PuiseuxSeries acc;
    for (auto const& [j, gj] : rows_) {
      if (j > m) break;
      PuiseuxSeries const& hk = h[static_cast<std::size_t>(m - j)];
      if (!exact_zero(hk)) acc += gj * hk * CycNum(static_cast<long>(j));
    }
    h[static_cast<std::size_t>(m)] = acc * CycNum(Rational(1, m));
  }
  Rows rows;
  for (Key m = 0; m < limit; ++m) rows.emplace_hint(rows.end(), m, std::move(h[static_cast<std::size_t>(m)]));
  return from_rows(Mp_, std::move(rows), p_bound_);
}

std::optional<std::pair<Rational, Rational>> BiSeries::first_difference(BiSeries const& a, BiSeries const& b) {
  std::int64_t Mp = std::lcm(a.Mp_, b.Mp_);
  std::optional<Rational> window = min_bound(a.p_bound_, b.p_bound_);
  std::set<Key> keys;
  for (auto const& [k, r] : a.rows_) keys.insert(k * (Mp / a.Mp_));
  for (auto const& [k, r] : b.rows_) keys.insert(k * (Mp / b.Mp_));
  for (Key k : keys) {
    Rational e = make_rational(k, Mp);
    if (window && e >= *window) break;
    if (auto d = PuiseuxSeries::first_difference(a.row(e), b.row(e))) return std::make_pair(e, *d);
  }
  return std::nullopt;
}

}  // namespace moonshine
