#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "moonshine/qseries.hpp"

namespace moonshine {

/// Truncated series in two symbols p and q.
///
/// Stored as rows: the key k stands for p^(k/M_p) and holds a PuiseuxSeries
/// in q. Each row carries its own q window, so triangular windows such as
/// m + n <= K are represented exactly. Rows at or above the p bound are
/// unknown. A row that is zero but only known up to some q exponent is kept;
/// an absent row below the p bound is exactly zero.
class BiSeries {
 public:
  using Key = std::int64_t;
  using Rows = std::map<Key, PuiseuxSeries>;

  BiSeries() = default;

  static BiSeries zero() { return {}; }
  static BiSeries one();
  /// c p^(m/Mp) q^(n/Mq), exact.
  static BiSeries monomial(CycNum c, Key m, Key n, std::int64_t Mp = 1, std::int64_t Mq = 1);
  static BiSeries from_rows(std::int64_t Mp, Rows rows, std::optional<Rational> p_bound);
  /// A series in p alone, each coefficient exact in q.
  static BiSeries in_p(PuiseuxSeries const& s);
  /// A series in q alone, sitting in row p^0.
  static BiSeries in_q(PuiseuxSeries const& s);

  std::int64_t p_denominator() const { return Mp_; }
  Rows const& rows() const { return rows_; }
  std::optional<Rational> const& p_bound() const { return p_bound_; }
  std::optional<Key> p_bound_numerator() const;

  /// Row at p^e; exact zero when absent. Throws InconclusiveError beyond the p bound.
  PuiseuxSeries row(Rational const& e) const;
  bool knows(Rational const& m, Rational const& n) const;
  /// Coefficient of p^m q^n; throws InconclusiveError outside the window.
  CycNum coefficient(Rational const& m, Rational const& n) const;

  BiSeries& operator+=(BiSeries const& o);
  BiSeries& operator-=(BiSeries const& o);
  BiSeries& operator*=(BiSeries const& o);
  BiSeries& operator*=(CycNum const& c);
  friend BiSeries operator+(BiSeries a, BiSeries const& b) { return a += b; }
  friend BiSeries operator-(BiSeries a, BiSeries const& b) { return a -= b; }
  friend BiSeries operator*(BiSeries a, BiSeries const& b) { return a *= b; }
  friend BiSeries operator*(BiSeries a, CycNum const& c) { return a *= c; }
  BiSeries operator-() const;

  /// p -> p^i, q -> q^i.
  BiSeries substitute_powers(std::int64_t i) const;
  /// Forget rows at or above p^e.
  BiSeries truncated_p(Rational const& e) const;

  /// Logarithm; the p^0 row must be exactly 1 and no row may sit below it.
  BiSeries log() const;
  /// Exponential; every row must sit strictly above p^0.
  BiSeries exp() const;

  friend bool operator==(BiSeries const& a, BiSeries const& b) {
    return a.Mp_ == b.Mp_ && a.p_bound_ == b.p_bound_ && a.rows_ == b.rows_;
  }

  /// First (p, q) exponent pair, scanning p then q upward, where a and b
  /// differ inside both windows.
  static std::optional<std::pair<Rational, Rational>> first_difference(BiSeries const& a, BiSeries const& b);

 private:
  BiSeries with_p_denominator(std::int64_t Mp) const;
  void normalize();

  std::int64_t Mp_ = 1;
  Rows rows_;
  std::optional<Rational> p_bound_;
};

}  // namespace moonshine
