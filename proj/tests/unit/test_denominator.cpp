#include <doctest.h>

#include "moonshine/denominator.hpp"
#include "moonshine/replication.hpp"
#include "support/oracles.hpp"

using namespace moonshine;

namespace {

PuiseuxSeries q(std::int64_t n, std::int64_t M = 1) { return PuiseuxSeries::monomial(CycNum(1L), n, M); }

ModuleCharacterData j_data(int K) { return ModuleCharacterData::from_series(oracle::j_series(K)); }

// Single pole slice Tr(h^e | V^{1,-1/N}_{1-1/N}) = 1 for all e.
ModuleCharacterData pole_only(std::int64_t N, std::int64_t h_order, std::int64_t max_grading) {
  ModuleCharacterData d(N, h_order, max_grading);
  for (std::int64_t e = 1; e <= h_order; ++e) d.set(1, -1, N - 1, e, CycNum(1L));
  return d;
}

}  // namespace

TEST_CASE("character data bookkeeping") {
  ModuleCharacterData d(3, 2, 10);
  d.set(1, 2, 2, 1, CycNum(5L));
  CHECK(d.trace(4, -1, 2, 3) == CycNum(5L));
  CHECK(d.trace(1, 2, 5, 1).is_zero());
  CHECK_THROWS_AS(d.trace(1, 2, 11, 1), InconclusiveError);
  CHECK_THROWS_AS(d.set(1, 1, 2, 1, CycNum(1L)), DomainError);
  CHECK_THROWS_AS(d.set(1, 2, 14, 1, CycNum(1L)), DomainError);
  CHECK_THROWS_AS(ModuleCharacterData(0, 1, 3), DomainError);
}

TEST_CASE("orbifold partition functions") {
  CHECK(orbifold_partition(pole_only(3, 1, 6), 1, 0, 1) == PuiseuxSeries::from_terms(3, {{-1, CycNum(1L)}}, Rational(4, 3)));
  CHECK(orbifold_partition(ModuleCharacterData(2, 1, 4), 1, 0, 1).is_zero());

  PuiseuxSeries J = oracle::j_series(20);
  ModuleCharacterData d = ModuleCharacterData::from_series(J);
  CHECK(orbifold_partition(d, 0, 0, 0) == J);
  CHECK(orbifold_partition(d, 1, 1, 1) == J);

  // g acts by e(j/N): on the j = 1 slice of Z/2 data, g^1 contributes -1.
  ModuleCharacterData two(2, 1, 6);
  two.set(1, 1, 1, 1, CycNum(1L));
  two.set(1, 1, 3, 1, CycNum(4L));
  two.set(0, 1, 4, 1, CycNum(7L));
  PuiseuxSeries Z = orbifold_partition(two, 1, 1, 0);
  CHECK(Z.coefficient(Rational(-1, 2)) == CycNum(-1L));
  CHECK(Z.coefficient(Rational(1, 2)) == CycNum(-4L));
  CHECK(orbifold_partition(two, 0, 1, 0).coefficient(Rational(1)) == CycNum(-7L));
  // Translation: Z(g, h, tau + 1) = Z(g, g h, tau).
  CHECK(orbifold_partition(two, 1, 0, 0).translate(Rational(1)) == orbifold_partition(two, 1, 1, 0));
}

TEST_CASE("pole slice") {
  CHECK(pole_slice_dimension(j_data(10)).is_one());
  CHECK(pole_slice_dimension(pole_only(4, 2, 6)).is_one());
  PuiseuxSeries Z = orbifold_partition(pole_only(4, 2, 6), 1, 0, 1);
  CHECK(Z.valuation_exponent() == Rational(-1, 4));
  CHECK(Z.leading_coefficient() == pole_slice_dimension(pole_only(4, 2, 6)));
}

TEST_CASE("denominator formula for J") {
  ModuleCharacterData d = j_data(100);
  auto r = denominator_verify(d, {1}, 8, Rational(8));
  CHECK(r.verdict == Verdict::pass);
  CHECK(denominator_verify(j_data(12), {1}, 8, Rational(8)).verdict == Verdict::inconclusive);

  // The sum side is J(p) - J(q) up to the factor p.
  DenominatorSides sides = denominator_sides(d, 1, 4);
  auto c = oracle::j_coefficients(10);
  CHECK(sides.lhs.coefficient(Rational(1), Rational(-1)) == CycNum(-1L));
  CHECK(sides.lhs.coefficient(Rational(3), Rational(0)) == CycNum(Rational(c[3])));
  CHECK(sides.rhs.coefficient(Rational(3), Rational(0)) == CycNum(Rational(c[3])));
}

TEST_CASE("perturbing one dimension breaks the formula") {
  for (std::int64_t k = -1; k <= 8; ++k) {
    auto coeffs = oracle::j_coefficients(100);
    ModuleCharacterData d = j_data(100);
    d.set(0, 0, k + 1, 1, CycNum(Rational(coeffs[k + 1] + 1)));
    auto r = denominator_verify(d, {1}, 8, Rational(8));
    CHECK(r.verdict == Verdict::fail);
    REQUIRE(r.location);
    MESSAGE("c(" << k << ") + 1 first differs at p^" << r.location->first.get_str() << " q^"
                 << r.location->second.get_str());
    // Linear in the perturbation, p^1 q^b picks up c(k) through the p q^-1
    // factor at b = k - 1 and through the p^2 q^b factor at b = k/2.
    if (k >= 3 && k % 2 == 1) CHECK(*r.location == std::pair{Rational(1), Rational(k - 1)});
    if (k >= 4 && k % 2 == 0) CHECK(*r.location == std::pair{Rational(1), Rational(k / 2)});
  }
}

TEST_CASE("pole-only toy data") {
  for (std::int64_t N : {1, 2, 3, 5}) {
    ModuleCharacterData d = pole_only(N, 2, 30 * N);
    CHECK(denominator_verify(d, {1, 2}, 5, Rational(3)).verdict == Verdict::pass);
    DenominatorSides sides = denominator_sides(d, 1, 5);
    // p^-1 - q^-1/N after dividing by p.
    CHECK(sides.rhs.coefficient(Rational(1), make_rational(-1, N)) == CycNum(-1L));
    CHECK(sides.rhs.coefficient(Rational(2), make_rational(-2, N)).is_zero());
  }
}

TEST_CASE("Adams operations act trivially on dimensions") {
  // h of order 2 with Tr(h) differing from dimensions; at h^2 = 1 only dimensions enter.
  ModuleCharacterData d(1, 2, 30);
  ModuleCharacterData dims(1, 1, 30);
  auto c = oracle::j_coefficients(29);
  for (int n = -1; n <= 29; ++n) {
    d.set(0, 0, n + 1, 2, CycNum(Rational(c[n + 1])));
    d.set(0, 0, n + 1, 1, CycNum(Rational(n % 2 == 0 ? 1 : -1)));
    dims.set(0, 0, n + 1, 1, CycNum(Rational(c[n + 1])));
  }
  CHECK(denominator_sides(d, 2, 4).rhs == denominator_sides(dims, 1, 4).rhs);
}

TEST_CASE("Fricke monicity suite") {
  auto reports = fricke_monicity_suite(j_data(40), 0, 1, 8);
  PuiseuxSeries J = oracle::j_series(40);
  for (std::size_t n = 0; n < reports.size(); ++n) {
    CHECK(reports[n].verdict == Verdict::pass);
    CHECK(reports[n].polynomial == faber(J, static_cast<std::int64_t>(n) + 1));
  }

  for (auto const& r : fricke_monicity_suite(pole_only(1, 1, 12), 0, 1, 5)) {
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.polynomial.coeffs().back().is_one());
  }
  CHECK(fricke_monicity_suite(pole_only(1, 1, 12), 0, 1, 3)[2].polynomial.to_string() == "x^3");

  auto coeffs = oracle::j_coefficients(40);
  ModuleCharacterData bad = j_data(40);
  bad.set(0, 0, 6, 1, CycNum(Rational(coeffs[6] + 1)));
  CHECK(denominator_verify(bad, {1}, 6, Rational(6)).verdict == Verdict::fail);
  bool failed = false;
  for (auto const& r : fricke_monicity_suite(bad, 0, 1, 8)) failed = failed || r.verdict == Verdict::fail;
  CHECK(failed);
}

TEST_CASE("Fricke monicity on twisted pole data") {
  // Z(g, h) = q^-1/N: the orbifold family of the pole slice alone.
  ModuleCharacterData d = pole_only(2, 1, 8);
  for (auto const& r : fricke_monicity_suite(d, 0, 0, 4)) CHECK(r.verdict == Verdict::pass);
}
