#include <doctest.h>

#include "moonshine/error.hpp"
#include "moonshine/qseries.hpp"

using namespace moonshine;

namespace {

PuiseuxSeries q(std::int64_t n, std::int64_t M = 1) { return PuiseuxSeries::monomial(CycNum(1L), n, M); }
PuiseuxSeries O(Rational e) { return PuiseuxSeries::from_terms(1, {}, e); }

}  // namespace

TEST_CASE("series arithmetic") {
  CHECK(q(-1) * q(-1) == q(-2));
  auto a = q(-1) + PuiseuxSeries::monomial(CycNum(196884L), 1);
  CHECK(a + (-q(-1)) == PuiseuxSeries::monomial(CycNum(196884L), 1));
  auto x = PuiseuxSeries::constant(CycNum(1L)) + q(1) + O(5);
  auto y = PuiseuxSeries::constant(CycNum(1L)) - q(1) + O(7);
  auto z = x * y;
  CHECK(z == PuiseuxSeries::constant(CycNum(1L)) - q(2) + O(5));
  CHECK(z.bound() == Rational(5));
}

TEST_CASE("product precision accounts for poles") {
  auto f = q(-1) + q(1) + O(3);
  auto g = f * f;
  // f*f = q^-2 + 2 + q^2 + O(q^2): the q^-1 of one factor meets the unknown q^3 of the other.
  CHECK(g.bound() == Rational(2));
  CHECK(g.coefficient(Rational(0)) == CycNum(2L));
  CHECK_THROWS_AS(g.coefficient(Rational(2)), InconclusiveError);
  auto zero_known = O(4);
  CHECK((zero_known * q(-1)).bound() == Rational(3));
  CHECK((PuiseuxSeries::zero() * f).is_exact());
}

TEST_CASE("powers") {
  CHECK(q(-1).pow(3) == q(-3));
  CHECK(q(-1).pow(0) == PuiseuxSeries::constant(CycNum(1L)));
  auto a1 = CycNum(Rational(5, 2));
  auto f = q(-1) + a1 * q(1);
  CHECK(f.pow(2) == q(-2) + PuiseuxSeries::constant(CycNum(2L) * a1) + a1 * a1 * q(2));
}

TEST_CASE("scaled substitution") {
  CHECK(q(-1).substitute_scaled(1, 0, 1) == q(-1));
  CHECK(q(-1).substitute_scaled(1, 1, 2) == -q(-1, 2));
  CHECK(q(-1).substitute_scaled(2, 0, 1) == q(-2));
  auto f = q(-1, 3) + CycNum::root(3, 1) * q(2, 3) + O(Rational(5, 3));
  // Shifting b by d is absorbed by the translation tau -> tau - 1 of the input.
  CHECK(f.substitute_scaled(2, 1, 3) == f.translate(-1).substitute_scaled(2, 4, 3));
  auto h = q(-1) + CycNum::root(4, 1) * q(2) + O(4);
  CHECK(h.substitute_scaled(1, 1, 3) == h.substitute_scaled(1, 4, 3));
  CHECK(f.substitute_scaled(2, 1, 3).bound() == Rational(10, 9));
}

TEST_CASE("translation") {
  auto f = q(-1, 2) + q(1, 2);
  CHECK(f.translate(1) == -f);
  CHECK(f.translate(2) == f);
}

TEST_CASE("log and exp") {
  auto one = PuiseuxSeries::constant(CycNum(1L));
  CHECK(one.log().is_zero());
  auto l = (one - q(1) + O(6)).log();
  for (int k = 1; k < 6; ++k) CHECK(l.coefficient(k) == CycNum(Rational(-1, k)));
  auto e = (q(1) + O(4)).exp();
  CHECK(e == one + q(1) + PuiseuxSeries::monomial(CycNum(Rational(1, 2)), 2) +
                 PuiseuxSeries::monomial(CycNum(Rational(1, 6)), 3) + O(4));
  CHECK_THROWS_AS(q(-1).exp(), DomainError);
  CHECK_THROWS_AS((q(1) + O(3)).log(), DomainError);
  auto g = one + CycNum::root(5, 2) * q(1, 2) + CycNum(Rational(3, 7)) * q(3, 2) + O(4);
  CHECK(g.log().exp() == g);
}

TEST_CASE("first difference and rendering") {
  auto a = q(-1) + q(2) + O(5);
  auto b = q(-1) + q(3) + O(4);
  CHECK(PuiseuxSeries::first_difference(a, b) == Rational(2));
  CHECK(PuiseuxSeries::first_difference(a, a) == std::nullopt);
  CHECK((q(-1) + PuiseuxSeries::monomial(CycNum(196884L), 1) + O(3)).to_string() == "q^-1 + 196884*q + O(q^3)");
}
