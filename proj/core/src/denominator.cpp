#include "moonshine/denominator.hpp"

#include "moonshine/arith.hpp"

namespace moonshine {

ModuleCharacterData::ModuleCharacterData(std::int64_t N, std::int64_t h_order, std::int64_t max_grading)
    : N_(N), h_order_(h_order), max_grading_(max_grading) {
  if (N < 1) throw DomainError("order of g must be positive");
  if (h_order < 1) throw DomainError("order of h must be positive");
}

ModuleCharacterData::Key ModuleCharacterData::normalize(std::int64_t i, std::int64_t j, std::int64_t K,
                                                        std::int64_t e) const {
  return {mod_floor(i, N_), mod_floor(j, N_), K, mod_floor(e - 1, h_order_) + 1};
}

void ModuleCharacterData::set(std::int64_t i, std::int64_t j, std::int64_t K, std::int64_t e, CycNum value) {
  if (mod_floor(K - i * j, N_) != 0)
    throw DomainError("slice (" + std::to_string(i) + "," + std::to_string(j) + ") cannot carry grading " +
                      std::to_string(K) + "/" + std::to_string(N_));
  if (K > max_grading_)
    throw DomainError("grading " + std::to_string(K) + "/" + std::to_string(N_) + " exceeds the truncation");
  Key key = normalize(i, j, K, e);
  if (value.is_zero())
    traces_.erase(key);
  else
    traces_.insert_or_assign(key, std::move(value));
}

CycNum ModuleCharacterData::trace(std::int64_t i, std::int64_t j, std::int64_t K, std::int64_t e) const {
  if (!knows(K))
    throw InconclusiveError("grading " + std::to_string(K) + "/" + std::to_string(N_) + " is beyond the truncation");
  auto it = traces_.find(normalize(i, j, K, e));
  return it == traces_.end() ? CycNum() : it->second;
}

ModuleCharacterData ModuleCharacterData::from_series(PuiseuxSeries const& f) {
  if (f.denominator() != 1) throw DomainError("g = 1 data needs integer exponents");
  std::int64_t max_grading;
  if (auto b = f.bound_numerator())
    max_grading = *b;  // a_n known for n < bound, i.e. gradings 1 + n <= bound
  else
    max_grading = f.terms().empty() ? 0 : f.terms().rbegin()->first + 1;
  ModuleCharacterData data(1, 1, max_grading);
  for (auto const& [n, c] : f.terms()) {
    if (n < -1) throw DomainError("g = 1 data has no gradings below 0");
    data.set(0, 0, n + 1, 1, c);
  }
  return data;
}

CycNum pole_slice_dimension(ModuleCharacterData const& data) {
  return data.trace(1, -1, data.N() - 1, data.h_order());
}

PuiseuxSeries orbifold_partition(ModuleCharacterData const& data, std::int64_t k, std::int64_t l, std::int64_t m) {
  std::int64_t N = data.N();
  std::int64_t e = mod_floor(m - 1, data.h_order()) + 1;
  PuiseuxSeries::Terms terms;
  for (auto const& [key, value] : data.traces()) {
    auto [i, j, K, power] = key;
    if (i != mod_floor(k, N) || power != e) continue;
    CycNum c = CycNum::root(N, mod_floor(l * j, N)) * value;
    auto [it, inserted] = terms.try_emplace(K - N, c);
    if (!inserted) it->second += c;
  }
  return PuiseuxSeries::from_terms(N, std::move(terms), make_rational(data.max_grading() + 1 - N, N));
}

DenominatorSides denominator_sides(ModuleCharacterData const& data, std::int64_t s, std::int64_t p_max) {
  std::int64_t N = data.N();
  std::int64_t Kmax = data.max_grading();
  std::int64_t rows = p_max + 1;  // p times the formula has p-degrees 0..p_max+1
  auto e_of = [&](std::int64_t power) { return mod_floor(power - 1, data.h_order()) + 1; };

  BiSeries::Rows arg;
  for (std::int64_t a = 1; a <= rows; ++a) {
    PuiseuxSeries::Terms terms;
    std::optional<std::int64_t> bound;  // numerator over N
    for (std::int64_t i : divisors(a)) {
      std::int64_t m = a / i;
      // V^{m,n}_{1+mn} is known for N n <= (Kmax - N) / m.
      std::int64_t nb = i * (div_floor(Kmax - N, m) + 1);
      bound = bound ? std::min(*bound, nb) : nb;
      std::int64_t e = e_of(s * i);
      for (auto const& [key, value] : data.traces()) {
        auto [ki, kj, K, power] = key;
        if (ki != mod_floor(m, N) || power != e || (K - N) % m != 0) continue;
        std::int64_t Nn = (K - N) / m;
        if (mod_floor(Nn, N) != kj) continue;
        CycNum c = value * CycNum(make_rational(-1, i));
        auto [it, inserted] = terms.try_emplace(i * Nn, c);
        if (!inserted) it->second += c;
      }
    }
    arg.emplace(a, PuiseuxSeries::from_terms(N, std::move(terms), make_rational(*bound, N)));
  }
  BiSeries rhs = BiSeries::from_rows(1, std::move(arg), Rational(rows + 1)).exp();

  BiSeries::Rows sum;
  sum.emplace(0, PuiseuxSeries::constant(CycNum(1L)));
  PuiseuxSeries::Terms h1;
  for (auto const& [key, value] : data.traces()) {
    auto [ki, kj, K, power] = key;
    if (ki != mod_floor(1, N) || power != e_of(s) || mod_floor(K - N, N) != kj) continue;
    h1.emplace(K - N, -value);
  }
  sum.emplace(1, PuiseuxSeries::from_terms(N, std::move(h1), make_rational(Kmax - N + 1, N)));
  for (std::int64_t a = 2; a <= rows; ++a) {
    std::int64_t m = a - 1;
    if (!data.knows(N + m) || !data.knows(N - 1)) {
      sum.emplace(a, PuiseuxSeries::from_terms(N, {}, Rational(0)));
      continue;
    }
    CycNum c = data.trace(1, -1, N - 1, s) * data.trace(m, 1, N + m, s);
    sum.emplace(a, PuiseuxSeries::constant(c));
  }
  BiSeries lhs = BiSeries::from_rows(1, std::move(sum), Rational(rows + 1));
  return {std::move(lhs), std::move(rhs)};
}

DenominatorReport denominator_verify(ModuleCharacterData const& data, std::vector<std::int64_t> const& powers,
                                     std::int64_t P, Rational const& Q) {
  if (P < 0) throw DomainError("p window must be non-negative");
  DenominatorReport r;
  bool complete = true;
  Rational edge = Q + make_rational(1, data.N());
  for (std::int64_t s : powers) {
    DenominatorSides sides = denominator_sides(data, s, P);
    for (std::int64_t a = 0; a <= P + 1; ++a) {
      PuiseuxSeries L = sides.lhs.row(Rational(a)).truncated(edge);
      PuiseuxSeries R = sides.rhs.row(Rational(a)).truncated(edge);
      if (auto d = PuiseuxSeries::first_difference(L, R)) {
        r.verdict = Verdict::fail;
        r.h_power = s;
        r.location = std::pair{Rational(a - 1), *d};
        r.detail = "h^" + std::to_string(s) + ": coefficients of p^" + std::to_string(a - 1) + " q^" + d->get_str() +
                   " differ: " + L.coefficient(*d).to_string() + " vs " + R.coefficient(*d).to_string();
        return r;
      }
      complete = complete && L.knows(Q) && R.knows(Q);
    }
  }
  r.verdict = complete ? Verdict::pass : Verdict::inconclusive;
  if (!complete) r.detail = "character data does not cover the whole window";
  return r;
}

EquivariantFamily orbifold_family(ModuleCharacterData const& data) {
  std::int64_t N = data.N();
  std::int64_t H = data.h_order();
  auto G = std::make_shared<GroupTable const>(
      GroupTable::product(GroupTable::cyclic(static_cast<std::uint32_t>(N)),
                          GroupTable::cyclic(static_cast<std::uint32_t>(H))));
  EquivariantFamily family(G);
  for (std::int64_t k = 0; k < N; ++k)
    for (std::int64_t l = 0; l < N; ++l)
      for (std::int64_t m = 0; m < H; ++m) {
        CommutingPair pair{static_cast<Element>(k * H), static_cast<Element>(l * H + m)};
        if (!family.has(pair)) family.set(pair, orbifold_partition(data, k, l, m));
      }
  return family;
}

std::vector<MonicityReport> fricke_monicity_suite(ModuleCharacterData const& data, std::int64_t l, std::int64_t m,
                                                  std::int64_t n_max) {
  std::int64_t N = data.N();
  std::int64_t H = data.h_order();
  EquivariantFamily family = orbifold_family(data);
  CommutingPair pair{static_cast<Element>(mod_floor(1, N) * H),
                     static_cast<Element>(mod_floor(l, N) * H + mod_floor(m, H))};
  return weak_monicity_check(family, pair, n_max);
}

}  // namespace moonshine
