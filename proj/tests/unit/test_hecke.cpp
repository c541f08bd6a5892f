#include <doctest.h>

#include "moonshine/arith.hpp"
#include "moonshine/hecke.hpp"
#include "support/oracles.hpp"

using namespace moonshine;

namespace {

std::shared_ptr<GroupTable const> share(GroupTable G) { return std::make_shared<GroupTable const>(std::move(G)); }

PuiseuxSeries q(std::int64_t n, std::int64_t M = 1) { return PuiseuxSeries::monomial(CycNum(1L), n, M); }

}  // namespace

TEST_CASE("J oracle agrees with the known leading coefficients") {
  auto c = oracle::j_coefficients(3);
  CHECK(c[0] == 1);
  CHECK(c[1] == 0);
  CHECK(c[2] == 196884);
  CHECK(c[3] == 21493760);
  CHECK(c[4] == 864299970);
}

TEST_CASE("isogeny counts") {
  CHECK(isogeny_oracle(4).size() == 7);
  CHECK(isogeny_oracle(1).size() == 1);
  auto six = isogeny_oracle(6);
  CHECK(six.size() == 12);
  for (auto const& t : six) CHECK(t.primitive);
  for (std::int64_t n = 1; n <= 100; ++n) {
    auto triples = isogeny_oracle(n);
    CHECK(static_cast<std::int64_t>(triples.size()) == divisor_sigma(n));
    Rational psi(n);
    for (auto p : prime_factors(n)) psi *= Rational(p + 1, p);
    std::int64_t primitive = 0;
    for (auto const& t : triples) primitive += t.primitive;
    CHECK(Rational(primitive) == psi);
  }
}

TEST_CASE("trivial group Hecke operator on J") {
  auto G = share(GroupTable::cyclic(1));
  EquivariantFamily f(G);
  auto J = oracle::j_series(30);
  f.set({0, 0}, J);
  CHECK(hecke_apply(f, 1, {0, 0}) == J);
  auto t2 = hecke_apply(f, 2, {0, 0});
  auto expected = J * J - PuiseuxSeries::constant(CycNum(2L * 196884L));
  CHECK(PuiseuxSeries::first_difference(t2, expected) == std::nullopt);
  CHECK(t2.bound() == make_rational(31, 2));
}

TEST_CASE("pole-only family gives q^-p") {
  for (std::uint32_t N : {1U, 3U, 4U}) {
    auto G = share(GroupTable::cyclic(N));
    EquivariantFamily f(G);
    for (Element g = 0; g < N; ++g)
      for (Element h = 0; h < N; ++h)
        if (!f.has({g, h})) f.set({g, h}, q(-1));
    for (std::int64_t p : {2, 3, 5, 7}) {
      for (Element g = 0; g < N; ++g)
        for (Element h = 0; h < N; ++h) {
          if (G->pow(g, p) != g || G->pow(h, p) != h) continue;
          CHECK(hecke_apply(f, p, {g, h}) == q(-p));
        }
    }
  }
}

TEST_CASE("missing entries are reported") {
  auto G = share(GroupTable::cyclic(2));
  EquivariantFamily f(G);
  f.set({1, 0}, q(-1, 2));
  CHECK_THROWS_AS(hecke_apply(f, 2, {1, 0}), IncompleteFamilyError);
  CHECK_THROWS_AS(f.set({1, 1}, q(-1, 3)), DomainError);
}

TEST_CASE("lookups follow translation equivariance") {
  auto G = share(GroupTable::cyclic(4));
  EquivariantFamily f(G);
  auto s = q(-1, 4) + CycNum(3L) * q(1, 4) + PuiseuxSeries::from_terms(1, {}, Rational(2));
  f.set({1, 0}, s);
  CHECK(f.at({1, 1}) == s.translate(1));
  CHECK(f.at({1, 3}) == s.translate(3));
}

TEST_CASE("composition identity on random families") {
  for (auto const& G : {share(GroupTable::cyclic(4)), share(GroupTable::from_permutations({{1, 2, 0}, {1, 0, 2}}))}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      auto f = random_family(G, 24, seed);
      for (auto [k, m] : {std::pair{2, 2}, {2, 3}, {4, 6}, {6, 4}, {3, 3}}) {
        for (Element g = 0; g < G->order(); ++g)
          for (Element h = 0; h < G->order(); ++h) {
            if (!G->commutes(g, h)) continue;
            auto report = hecke_compose_check(f, k, m, {g, h});
            CHECK(report.verdict == Verdict::pass);
            CHECK(PuiseuxSeries::first_difference(report.lhs, oracle::hecke_double_sum(f, k, m, {g, h})) ==
                  std::nullopt);
            CHECK(PuiseuxSeries::first_difference(report.rhs, oracle::hecke_divisor_sum(f, k, m, {g, h})) ==
                  std::nullopt);
          }
      }
    }
  }
}

TEST_CASE("composition holds for any equivariant corruption") {
  // The identity is formal in f, so changing a coefficient while keeping the
  // family equivariant cannot break it.
  auto G = share(GroupTable::cyclic(4));
  auto f = random_family(G, 24, 11);
  auto c = f.canonical({2, 1}).pair;
  f.set(c, f.at(c) + PuiseuxSeries::monomial(CycNum(5L), 3, 2));
  for (Element g = 0; g < 4; ++g)
    for (Element h = 0; h < 4; ++h) CHECK(hecke_compose_check(f, 2, 2, {g, h}).verdict == Verdict::pass);
}

TEST_CASE("non-equivariant corruption fails the composition check") {
  auto G = share(GroupTable::cyclic(4));
  auto f = random_family(G, 24, 11);
  // Identity component with a q^(1/2) term, so f(1, h^2, tau + 1) != f(1, h^2, tau).
  // At (1, h) both sides then differ by f(1, h^2, tau + 1) - f(1, h^2, tau).
  f.set_unchecked({0, 2}, f.at({0, 2}) + PuiseuxSeries::monomial(CycNum(5L), 3, 2));
  std::size_t failures = 0;
  for (Element g = 0; g < 4; ++g)
    for (Element h = 0; h < 4; ++h) {
      auto r = hecke_compose_check(f, 2, 2, {g, h});
      if (r.verdict == Verdict::fail) {
        ++failures;
        CHECK(r.first_difference.has_value());
      }
    }
  CHECK(failures > 0);
}
