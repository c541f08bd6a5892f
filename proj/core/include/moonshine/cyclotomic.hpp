#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace moonshine {

using Rational = mpq_class;
using Integer = mpz_class;

/// n/d in lowest terms; d must be nonzero.
inline Rational make_rational(std::int64_t n, std::int64_t d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// A root of unity e(exponent / order) with gcd(exponent, order) = 1.
struct RootOfUnity {
  std::int64_t order = 1;
  std::int64_t exponent = 0;

  friend bool operator==(RootOfUnity const&, RootOfUnity const&) = default;
};

/// Exact element of the cyclotomic field Q(zeta_L).
///
/// Stored in the power basis 1, z, ..., z^(phi(L)-1) with z = e(1/L), reduced
/// modulo the L-th cyclotomic polynomial. The conductor is always the minimal
/// one, so two equal field elements have identical representations. Values are
/// immutable once built; the shared per-conductor tables are guarded
/// internally, so instances can be used from several threads.
class CycNum {
 public:
  CycNum();
  CycNum(long value);  // NOLINT(google-explicit-constructor)
  CycNum(Rational value);  // NOLINT(google-explicit-constructor)

  /// e(k / L).
  static CycNum root(std::int64_t L, std::int64_t k);

  /// Element sum_i coeffs[i] z^i with z = e(1/L); any length is accepted and
  /// reduced.
  static CycNum from_power_basis(std::int64_t L, std::vector<Rational> coeffs);

  std::int64_t conductor() const { return conductor_; }
  std::vector<Rational> const& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const { return conductor_ == 1; }
  /// Requires is_rational().
  Rational const& rational() const;

  /// Coefficients of this element in the power basis of Q(zeta_L); L must be a
  /// multiple of the conductor.
  std::vector<Rational> embed(std::int64_t L) const;

  CycNum& operator+=(CycNum const& o);
  CycNum& operator-=(CycNum const& o);
  CycNum& operator*=(CycNum const& o);
  CycNum& operator/=(CycNum const& o);

  friend CycNum operator+(CycNum a, CycNum const& b) { return a += b; }
  friend CycNum operator-(CycNum a, CycNum const& b) { return a -= b; }
  friend CycNum operator*(CycNum a, CycNum const& b) { return a *= b; }
  friend CycNum operator/(CycNum a, CycNum const& b) { return a /= b; }
  CycNum operator-() const;

  friend bool operator==(CycNum const& a, CycNum const& b) {
    return a.conductor_ == b.conductor_ && a.coeffs_ == b.coeffs_;
  }

  CycNum inverse() const;
  CycNum pow(std::int64_t e) const;

  /// Complex embedding with z = exp(2 pi i / L).
  std::complex<double> to_complex() const;

  /// Returns (n, k) with this = e(k/n), gcd(k, n) = 1, if this is a root of
  /// unity. Every root of unity in Q(zeta_L) has order dividing lcm(2, L);
  /// a bound, when given, additionally caps the orders searched.
  std::optional<RootOfUnity> classify_root_of_unity(
      std::optional<std::int64_t> order_bound = std::nullopt) const;

  /// Textual form "L=<conductor> c0 c1 ...", or a bare rational "n/d" when the
  /// conductor is 1.
  std::string to_string() const;
  std::string to_text() const;  // always the "L=" form
  static CycNum parse(std::string_view text);

 private:
  CycNum(std::int64_t L, std::vector<Rational> coeffs, bool reduced);
  void minimize_conductor();
  static void lift_to_common(CycNum& a, CycNum& b);

  std::int64_t conductor_ = 1;
  std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, CycNum const& c);

}  // namespace moonshine
