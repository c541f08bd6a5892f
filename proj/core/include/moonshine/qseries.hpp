#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moonshine/cyclotomic.hpp"

namespace moonshine {

/// Truncated Laurent series in q^(1/M) with cyclotomic coefficients.
///
/// Key n stands for the exponent n/M. A series carries an exclusive bound B
/// (a rational exponent): every coefficient of q^e with e < B is known exactly,
/// including the zeros off the stored lattice, and nothing is known at or
/// above B. An exact series (a Laurent polynomial) has no bound.
///
/// The exponent denominator is kept minimal: it is reduced whenever all keys
/// allow it, so equal series compare equal.
class PuiseuxSeries {
 public:
  using Key = std::int64_t;
  using Terms = std::map<Key, CycNum>;

  PuiseuxSeries() = default;

  /// Exact zero.
  static PuiseuxSeries zero() { return {}; }
  /// Exact constant.
  static PuiseuxSeries constant(CycNum c);
  /// Exact monomial c q^(n/M).
  static PuiseuxSeries monomial(CycNum c, Key n, std::int64_t M = 1);
  /// Series from terms; bound is the exclusive exponent bound, nullopt = exact.
  static PuiseuxSeries from_terms(std::int64_t M, Terms terms, std::optional<Rational> bound);
  /// Integer-exponent series sum_i coeffs[i] q^(first + i), known for
  /// exponents < first + coeffs.size().
  static PuiseuxSeries from_dense(Key first, std::vector<CycNum> const& coeffs);
  static PuiseuxSeries from_dense(Key first, std::vector<Rational> const& coeffs);

  std::int64_t denominator() const { return M_; }
  Terms const& terms() const { return terms_; }
  bool is_exact() const { return !bound_.has_value(); }
  /// Exclusive exponent bound; nullopt when exact.
  std::optional<Rational> const& bound() const { return bound_; }
  /// Number of numerators n (over denominator()) with n/M below the bound.
  std::optional<Key> bound_numerator() const;
  /// True if the coefficient of q^e is known.
  bool knows(Rational const& e) const;

  bool is_zero() const { return terms_.empty(); }
  /// Lowest stored numerator; nullopt for a zero series.
  std::optional<Key> valuation() const;
  std::optional<Rational> valuation_exponent() const;
  CycNum leading_coefficient() const;

  /// Coefficient of q^e (zero when absent). Throws InconclusiveError when e
  /// lies beyond the bound.
  CycNum coefficient(Rational const& e) const;
  CycNum coefficient_at(Key n) const;  // numerator over denominator()

  /// Same series over a multiple of the denominator.
  PuiseuxSeries with_denominator(std::int64_t M) const;
  /// Drop knowledge at and above exponent e (e given as a rational).
  PuiseuxSeries truncated(Rational const& e) const;

  PuiseuxSeries& operator+=(PuiseuxSeries const& o);
  PuiseuxSeries& operator-=(PuiseuxSeries const& o);
  PuiseuxSeries& operator*=(PuiseuxSeries const& o);
  PuiseuxSeries& operator*=(CycNum const& c);
  friend PuiseuxSeries operator+(PuiseuxSeries a, PuiseuxSeries const& b) { return a += b; }
  friend PuiseuxSeries operator-(PuiseuxSeries a, PuiseuxSeries const& b) { return a -= b; }
  friend PuiseuxSeries operator*(PuiseuxSeries a, PuiseuxSeries const& b) { return a *= b; }
  friend PuiseuxSeries operator*(PuiseuxSeries a, CycNum const& c) { return a *= c; }
  friend PuiseuxSeries operator*(CycNum const& c, PuiseuxSeries a) { return a *= c; }
  PuiseuxSeries operator-() const;

  PuiseuxSeries pow(std::uint64_t n) const;

  /// tau -> (a tau + b)/d: c q^(n/M) becomes c e(nb/(Md)) q^(na/(Md)).
  PuiseuxSeries substitute_scaled(std::int64_t a, std::int64_t b, std::int64_t d) const;

  /// Multiply every coefficient of q^e by e(k e); this is tau -> tau + k for
  /// rational k.
  PuiseuxSeries translate(Rational const& k) const;

  /// Formal logarithm; needs constant term 1 and no negative exponents.
  PuiseuxSeries log() const;
  /// Formal exponential; needs strictly positive valuation.
  PuiseuxSeries exp() const;

  /// Exact equality: same denominator, bound and terms.
  friend bool operator==(PuiseuxSeries const& a, PuiseuxSeries const& b) {
    return a.M_ == b.M_ && a.bound_ == b.bound_ && a.terms_ == b.terms_;
  }

  /// Smallest exponent where a and b differ within the common window, if any.
  static std::optional<Rational> first_difference(PuiseuxSeries const& a, PuiseuxSeries const& b);

  /// Human-readable rendering, e.g. "q^-1 + 196884*q + O(q^3)".
  std::string to_string() const;

 private:
  void normalize();

  std::int64_t M_ = 1;
  Terms terms_;
  std::optional<Rational> bound_;
};

/// Minimum of two optional bounds, nullopt meaning unbounded.
std::optional<Rational> min_bound(std::optional<Rational> const& a, std::optional<Rational> const& b);

}  // namespace moonshine
