#include "moonshine/hecke.hpp"

#include <numeric>
#include <random>

#include "moonshine/arith.hpp"

namespace moonshine {

EquivariantFamily::EquivariantFamily(std::shared_ptr<GroupTable const> group) : group_(std::move(group)) {
  GroupTable const& G = *group_;
  auto canon = std::make_shared<std::vector<CanonicalPair>>(std::size_t{G.order()} * G.order());
  for (Element g = 0; g < G.order(); ++g)
    for (Element h = 0; h < G.order(); ++h)
      if (G.commutes(g, h))
        (*canon)[std::size_t{g} * G.order() + h] = pair_canonicalize(G, {g, h}, CanonicalMode::conjugation_and_translation);
  canon_ = std::move(canon);
}

CanonicalPair EquivariantFamily::canonical(CommutingPair pair) const {
  if (pair.g >= group_->order() || pair.h >= group_->order()) throw DomainError("pair element out of range");
  if (!group_->commutes(pair.g, pair.h)) throw DomainError("pair does not commute");
  return (*canon_)[std::size_t{pair.g} * group_->order() + pair.h];
}

void EquivariantFamily::set(CommutingPair pair, PuiseuxSeries series) {
  CanonicalPair c = canonical(pair);
  std::int64_t order = group_->element_order(c.pair.g);
  if (order % series.denominator() != 0)
    throw DomainError("series for (" + std::to_string(pair.g) + "," + std::to_string(pair.h) +
                      ") has exponents outside (1/" + std::to_string(order) + ")Z");
  // f(pair, tau) = f(c, tau + k), so f(c, tau) = f(pair, tau - k).
  PuiseuxSeries s = series.translate(Rational(-c.offset));
  for (std::int64_t j : translation_stabilizer(*group_, c.pair))
    if (!(s.translate(Rational(j)) == s))
      throw DomainError("series for (" + std::to_string(pair.g) + "," + std::to_string(pair.h) +
                        ") is not invariant under tau -> tau + " + std::to_string(j));
  table_.insert_or_assign(c.pair, std::move(s));
}

void EquivariantFamily::set_unchecked(CommutingPair pair, PuiseuxSeries series) {
  CanonicalPair c = canonical(pair);
  table_.insert_or_assign(c.pair, series.translate(Rational(-c.offset)));
}

bool EquivariantFamily::has(CommutingPair pair) const { return table_.count(canonical(pair).pair) != 0; }

PuiseuxSeries EquivariantFamily::at(CommutingPair pair) const {
  CanonicalPair c = canonical(pair);
  auto it = table_.find(c.pair);
  if (it == table_.end()) throw IncompleteFamilyError(pair.g, pair.h);
  if (c.offset == 0) return it->second;
  return it->second.translate(Rational(c.offset));
}

std::vector<IsogenyTriple> isogeny_oracle(std::int64_t n) {
  if (n < 1) throw DomainError("isogeny degree must be positive");
  std::vector<IsogenyTriple> out;
  for (std::int64_t d : divisors(n)) {
    std::int64_t a = n / d;
    for (std::int64_t b = 0; b < d; ++b) out.push_back({a, b, d, std::gcd(std::gcd(a, b), d) == 1});
  }
  return out;
}

PuiseuxSeries hecke_apply(EquivariantFamily const& f, std::int64_t n, CommutingPair pair) {
  GroupTable const& G = f.group();
  PuiseuxSeries sum;
  for (auto const& [a, b, d, primitive] : isogeny_oracle(n)) {
    CommutingPair source{G.pow(pair.g, d), G.mul(G.pow(pair.g, -b), G.pow(pair.h, a))};
    sum += f.at(source).substitute_scaled(a, b, d);
  }
  return sum;
}

SeriesComparison compare_series(PuiseuxSeries lhs, PuiseuxSeries rhs) {
  SeriesComparison r;
  r.window = min_bound(lhs.bound(), rhs.bound());
  r.first_difference = PuiseuxSeries::first_difference(lhs, rhs);
  if (r.first_difference) {
    r.verdict = Verdict::fail;
  } else {
    std::optional<Rational> lowest = min_bound(lhs.valuation_exponent(), rhs.valuation_exponent());
    bool empty = r.window && *r.window <= lowest.value_or(Rational(0));
    r.verdict = empty ? Verdict::inconclusive : Verdict::pass;
  }
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  return r;
}

SeriesComparison hecke_compose_check(EquivariantFamily const& f, std::int64_t k, std::int64_t m, CommutingPair pair) {
  if (k < 1 || m < 1) throw DomainError("Hecke indices must be positive");
  GroupTable const& G = f.group();
  PuiseuxSeries lhs;
  for (auto const& [a, b, d, primitive] : isogeny_oracle(k)) {
    CommutingPair source{G.pow(pair.g, d), G.mul(G.pow(pair.g, -b), G.pow(pair.h, a))};
    lhs += hecke_apply(f, m, source).substitute_scaled(a, b, d);
  }
  PuiseuxSeries rhs;
  for (std::int64_t t : divisors(std::gcd(k, m))) {
    CommutingPair source{G.pow(pair.g, t), G.pow(pair.h, t)};
    rhs += hecke_apply(f, k * m / (t * t), source) * CycNum(static_cast<long>(t));
  }
  return compare_series(std::move(lhs), std::move(rhs));
}

EquivariantFamily random_family(std::shared_ptr<GroupTable const> group, std::int64_t K, std::uint64_t seed) {
  static CycNum const palette[] = {CycNum(1L),          CycNum(-1L),         CycNum(2L),
                                   CycNum::root(4, 1),  CycNum::root(3, 1),  CycNum(Rational(1, 2)),
                                   CycNum::root(8, 3),  CycNum::root(6, 1) - CycNum(3L)};
  std::mt19937_64 rng(seed);
  EquivariantFamily f(group);
  GroupTable const& G = f.group();
  for (Element g = 0; g < G.order(); ++g) {
    for (Element h = 0; h < G.order(); ++h) {
      if (!G.commutes(g, h)) continue;
      CommutingPair c = f.canonical({g, h}).pair;
      if (f.has(c)) continue;
      std::int64_t M = G.element_order(c.g);
      std::vector<std::int64_t> stab = translation_stabilizer(G, c);
      PuiseuxSeries::Terms terms;
      for (std::int64_t n = -2; n <= K; ++n) {
        bool allowed = true;
        for (std::int64_t j : stab) allowed = allowed && (n * j) % M == 0;
        if (!allowed || rng() % 2 == 0) continue;
        terms.emplace(n, palette[rng() % std::size(palette)]);
      }
      f.set(c, PuiseuxSeries::from_terms(M, std::move(terms), make_rational(K + 1, M)));
    }
  }
  return f;
}

}  // namespace moonshine
