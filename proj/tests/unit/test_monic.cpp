#include <doctest.h>

#include "moonshine/monic.hpp"
#include "moonshine/replication.hpp"
#include "support/oracles.hpp"

using namespace moonshine;

namespace {

PuiseuxSeries q(std::int64_t n, std::int64_t M = 1) { return PuiseuxSeries::monomial(CycNum(1L), n, M); }

EquivariantFamily trivial_family(PuiseuxSeries f) {
  ReplicateSet set{f, {{1, f}}};
  return hecke_replication_bridge(set, 1);
}

}  // namespace

TEST_CASE("fit_monic on small examples") {
  auto r = fit_monic(q(-3), q(-1), 3);
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.polynomial.to_string() == "x^3");
  CHECK_FALSE(r.window);

  auto bad = fit_monic(q(-2) + q(1), q(-1), 2);
  CHECK(bad.verdict == Verdict::fail);
  CHECK(bad.first_failure == Rational(1));

  auto scaled = fit_monic(q(-2) * CycNum(2L), q(-1), 2);
  CHECK(scaled.verdict == Verdict::fail);
  CHECK(scaled.first_failure == Rational(-2));

  CHECK_THROWS_AS(fit_monic(q(1), q(1), 1), DomainError);
  CHECK_THROWS_AS(fit_monic(q(-1), PuiseuxSeries::constant(CycNum(3L)), 1), DomainError);

  PuiseuxSeries truncated = PuiseuxSeries::from_terms(1, {{-2, CycNum(1L)}}, Rational(-1));
  CHECK(fit_monic(truncated, q(-1), 2).verdict == Verdict::inconclusive);
}

TEST_CASE("fit_monic with a root-of-unity leading coefficient") {
  // F = i q^-1/2 + q^1/2; S = F^2 + 3F - 1.
  PuiseuxSeries F = PuiseuxSeries::monomial(CycNum::root(4, 1), -1, 2) + q(1, 2);
  PuiseuxSeries S = F * F + F * CycNum(3L) - PuiseuxSeries::constant(CycNum(1L));
  auto r = fit_monic(S, F, 2);
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.polynomial.to_string() == "x^2 + 3*x - 1");
}

TEST_CASE("2 T_2 J is J^2 - 2 * 196884") {
  PuiseuxSeries J = oracle::j_series(30);
  EquivariantFamily fam = trivial_family(J);
  auto r = fit_monic(hecke_apply(fam, 2, {0, 0}), J, 2);
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.polynomial.to_string() == "x^2 - 393768");
}

TEST_CASE("weak monicity of the J family gives the Faber polynomials") {
  PuiseuxSeries J = oracle::j_series(30);
  auto reports = weak_monicity_check(trivial_family(J), {0, 0}, 10);
  REQUIRE(reports.size() == 10);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    CHECK(reports[i].verdict == Verdict::pass);
    CHECK(reports[i].polynomial == faber(J, static_cast<std::int64_t>(i) + 1));
  }
  for (auto const& r : weak_monicity_check(trivial_family(q(-1)), {0, 0}, 6)) {
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.polynomial.coeffs().back().is_one());
  }
  CHECK(weak_monicity_check(trivial_family(q(-1)), {0, 0}, 4)[3].polynomial.to_string() == "x^4");
}

TEST_CASE("a non-replicable family fails weak monicity") {
  auto c = coefficient_list(oracle::j_series(30));
  c[4] += CycNum(1L);
  auto reports = weak_monicity_check(trivial_family(series_from_coefficients(c)), {0, 0}, 10);
  bool failed = false;
  for (auto const& r : reports) failed = failed || r.verdict == Verdict::fail;
  CHECK(failed);
  CHECK(reports[0].verdict == Verdict::pass);
}

TEST_CASE("level-2 hauptmodul identities behind the resultant oracle") {
  int K = 20;
  auto u = oracle::level2_u(K);
  auto c = oracle::j_coefficients(2 * K);
  c[1] += 744;  // classical j
  auto len = static_cast<std::size_t>(K + 1);
  // (u + 256 q)^3 = q j u^2 and (u + 16 q)^3 = q^2 j(q^2) u.
  auto shifted = [&](Integer k) {
    auto v = u;
    v[1] += k;
    return oracle::multiply(oracle::multiply(v, v, len), v, len);
  };
  std::vector<Integer> qj(c.begin(), c.begin() + K + 1);
  std::vector<Integer> q2j2(len, 0);
  for (std::size_t i = 0; 2 * i < len; ++i) q2j2[2 * i] = c[i];
  CHECK(shifted(256) == oracle::multiply(qj, oracle::multiply(u, u, len), len));
  CHECK(shifted(16) == oracle::multiply(q2j2, u, len));
}

TEST_CASE("modular equation F_2 for J") {
  PuiseuxSeries J = oracle::j_series(30);
  EquivariantFamily fam = trivial_family(J);
  BivariatePolynomial F = modular_equation(fam, {0, 0}, 2);
  CHECK(F.x_degree() == 3);
  CHECK(F.coefficient(0, 3).is_one());
  CHECK(symmetry_check(F) == Verdict::pass);
  for (auto const& r : root_substitution_check(F, fam, {0, 0}, 2)) CHECK(r.verdict == Verdict::pass);

  // Phi_2(x + 744, y + 744) expanded into y^i x^j.
  std::map<std::pair<int, int>, Rational> expected;
  auto binom = [](int n, int k) {
    Integer r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
  };
  Integer s = 744;
  for (auto const& [ij, v] : oracle::classical_phi2()) {
    auto [X, Y] = ij;
    for (int a = 0; a <= X; ++a)
      for (int b = 0; b <= Y; ++b) {
        Integer pa = 1;
        for (int k = 0; k < X - a + Y - b; ++k) pa *= s;
        expected[{b, a}] += Rational(v * binom(X, a) * binom(Y, b) * pa);
      }
  }
  BivariatePolynomial::Terms terms;
  for (auto const& [k, v] : expected)
    if (v != 0) terms.emplace(k, CycNum(v));
  CHECK(F == BivariatePolynomial(terms));
}

TEST_CASE("modular equation F_3 for J") {
  PuiseuxSeries J = oracle::j_series(40);
  EquivariantFamily fam = trivial_family(J);
  BivariatePolynomial F = modular_equation(fam, {0, 0}, 3);
  CHECK(F.x_degree() == 4);
  CHECK(F.y_degree() == 4);
  CHECK(F.coefficient(0, 4).is_one());
  CHECK(symmetry_check(F) == Verdict::pass);
  for (auto const& r : root_substitution_check(F, fam, {0, 0}, 3)) CHECK(r.verdict == Verdict::pass);
}

TEST_CASE("modular equation of q^-1") {
  BivariatePolynomial F = modular_equation(trivial_family(q(-1)), {0, 0}, 2);
  // Roots q^-2, q^-1/2, -q^-1/2: (x - y^2)(x^2 - y).
  BivariatePolynomial expected({{{0, 3}, CycNum(1L)}, {{2, 2}, CycNum(-1L)}, {{1, 1}, CycNum(-1L)}, {{3, 0}, CycNum(1L)}});
  CHECK(F == expected);
  CHECK(symmetry_check(F) == Verdict::pass);
}

TEST_CASE("modular equation preconditions") {
  auto G = std::make_shared<GroupTable const>(GroupTable::cyclic(3));
  EquivariantFamily f = random_family(G, 6, 7);
  CHECK_THROWS_AS(modular_equation(f, {1, 0}, 2), DomainError);
  CHECK_THROWS_AS(modular_equation(f, {0, 0}, 4), DomainError);
  auto c = coefficient_list(oracle::j_series(30));
  c[4] += CycNum(1L);
  CHECK_THROWS_AS(modular_equation(trivial_family(series_from_coefficients(c)), {0, 0}, 3), NotMonicError);
}

TEST_CASE("symmetry_check") {
  CHECK(symmetry_check(BivariatePolynomial({{{1, 0}, CycNum(1L)}, {{0, 1}, CycNum(1L)}})) == Verdict::pass);
  CHECK(symmetry_check(BivariatePolynomial({{{1, 2}, CycNum(1L)}})) == Verdict::fail);
}

TEST_CASE("leading behavior") {
  auto a = leading_behavior(q(-1) + q(1), 1);
  CHECK(a.zeta.is_one());
  CHECK(a.C == -1);
  CHECK(a.support == Verdict::pass);
  CHECK(a.zeta_order_ok);

  auto b = leading_behavior(-q(-1, 2) + PuiseuxSeries::constant(CycNum(1L)), 2, 2);
  CHECK(b.zeta == CycNum(-1L));
  CHECK(b.C == -1);
  CHECK(b.support == Verdict::pass);
  CHECK(b.zeta_order_ok);
  REQUIRE(b.root);
  CHECK(b.root->order == 2);

  auto c = leading_behavior(q(-2) + q(-1), 1);
  CHECK(c.C == -2);
  CHECK(c.support == Verdict::fail);
  CHECK(c.support_violation == Rational(-1));

  // zeta = e(1/6), N = 3 odd: zeta^6 = 1 but zeta^3 != 1.
  auto d = leading_behavior(PuiseuxSeries::monomial(CycNum::root(6, 1), -1), 3);
  CHECK(d.zeta_order_ok);
  CHECK_FALSE(d.zeta_order_tight);
  CHECK_FALSE(leading_behavior(PuiseuxSeries::monomial(CycNum::root(5, 1), -1), 2).zeta_order_ok);
  CHECK_FALSE(leading_behavior(PuiseuxSeries::monomial(CycNum(2L), -1), 2).root);
  CHECK_THROWS_AS(leading_behavior(q(2), 1), DomainError);
}

TEST_CASE("trigonometric type") {
  auto a = trig_type_detect(q(-1));
  CHECK(a.verdict == Verdict::pass);
  CHECK(a.zeta.is_zero());

  auto b = trig_type_detect(q(-1) + PuiseuxSeries::constant(CycNum(5L)) + q(1));
  CHECK(b.verdict == Verdict::pass);
  CHECK(b.zeta.is_one());
  CHECK(b.a0 == CycNum(5L));

  auto j = trig_type_detect(oracle::j_series(10));
  CHECK(j.verdict == Verdict::fail);
  CHECK(j.first_violation == Rational(1));
  CHECK(trig_type_detect(oracle::j_series(1)).first_violation == Rational(1));

  // -q^-1/2 + i q^1/2: tau -> 2 tau + 1 gives q^-1 - i q.
  auto c = trig_type_detect(-q(-1, 2) + PuiseuxSeries::monomial(CycNum::root(4, 1), 1, 2));
  CHECK(c.verdict == Verdict::pass);
  CHECK(c.a == Rational(2));
  REQUIRE(c.b);
  CHECK(*c.b == Rational(1));
  CHECK(c.zeta == -CycNum::root(4, 1));

  CHECK(trig_type_detect(q(-1) + q(1) * CycNum(2L)).verdict == Verdict::fail);
  CHECK(trig_type_detect(q(-1) * CycNum(2L)).verdict == Verdict::fail);
  PuiseuxSeries short_window = PuiseuxSeries::from_terms(1, {{-1, CycNum(1L)}}, Rational(1));
  CHECK(trig_type_detect(short_window).verdict == Verdict::inconclusive);
}
