#include "moonshine/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "moonshine/arith.hpp"
#include "moonshine/error.hpp"

namespace moonshine {

GroupTable GroupTable::from_table(std::vector<std::vector<Element>> rows) {
  auto n = static_cast<std::uint32_t>(rows.size());
  if (n == 0) throw DomainError("group must be nonempty");
  GroupTable G;
  G.n_ = n;
  G.table_.reserve(std::size_t{n} * n);
  for (auto const& row : rows) {
    if (row.size() != n) throw DomainError("multiplication table must be square");
    for (Element x : row) {
      if (x >= n) throw DomainError("table entry " + std::to_string(x) + " out of range");
      G.table_.push_back(x);
    }
  }
  // Each row and column a permutation, plus associativity, is equivalent to the axioms.
  for (Element a = 0; a < n; ++a) {
    std::vector<bool> row_seen(n), col_seen(n);
    for (Element b = 0; b < n; ++b) {
      if (row_seen[G.mul(a, b)] || col_seen[G.mul(b, a)]) throw DomainError("table is not a Latin square");
      row_seen[G.mul(a, b)] = true;
      col_seen[G.mul(b, a)] = true;
    }
  }
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c)
        if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)))
          throw DomainError("multiplication is not associative at (" + std::to_string(a) + "," + std::to_string(b) +
                            "," + std::to_string(c) + ")");
  Element e = n;
  for (Element a = 0; a < n && e == n; ++a) {
    bool ok = true;
    for (Element b = 0; b < n && ok; ++b) ok = G.mul(a, b) == b && G.mul(b, a) == b;
    if (ok) e = a;
  }
  if (e == n) throw DomainError("no identity element");
  G.identity_ = e;
  G.inverse_.assign(n, 0);
  G.order_.assign(n, 0);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b)
      if (G.mul(a, b) == e) G.inverse_[a] = b;
    std::uint32_t k = 1;
    for (Element x = a; x != e; x = G.mul(x, a)) ++k;
    G.order_[a] = k;
  }
  return G;
}

GroupTable GroupTable::from_permutations(std::vector<std::vector<std::uint32_t>> const& generators) {
  if (generators.empty()) return cyclic(1);
  std::size_t degree = generators.front().size();
  for (auto const& g : generators) {
    if (g.size() != degree) throw DomainError("generators act on different point sets");
    std::vector<std::uint32_t> sorted = g;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < degree; ++i)
      if (sorted[i] != i) throw DomainError("generator is not a permutation");
  }
  using Perm = std::vector<std::uint32_t>;
  auto compose = [](Perm const& a, Perm const& b) {
    Perm r(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) r[x] = a[b[x]];
    return r;
  };
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0U);
  std::vector<Perm> elems{id};
  std::map<Perm, Element> index{{id, 0}};
  for (auto const& g : generators)
    if (index.emplace(g, static_cast<Element>(elems.size())).second) elems.push_back(g);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (auto const& g : generators) {
      Perm p = compose(elems[i], g);
      if (index.emplace(p, static_cast<Element>(elems.size())).second) elems.push_back(std::move(p));
      if (elems.size() > 100000) throw DomainError("generated group is too large");
    }
  }
  std::vector<std::vector<Element>> rows(elems.size(), std::vector<Element>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) rows[a][b] = index.at(compose(elems[a], elems[b]));
  return from_table(std::move(rows));
}

GroupTable GroupTable::cyclic(std::uint32_t n) {
  if (n == 0) throw DomainError("cyclic group order must be positive");
  std::vector<std::vector<Element>> rows(n, std::vector<Element>(n));
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) rows[a][b] = (a + b) % n;
  return from_table(std::move(rows));
}

GroupTable GroupTable::product(GroupTable const& left, GroupTable const& right) {
  std::uint32_t m = right.order();
  std::uint32_t n = left.order() * m;
  std::vector<std::vector<Element>> rows(n, std::vector<Element>(n));
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) rows[a][b] = left.mul(a / m, b / m) * m + right.mul(a % m, b % m);
  return from_table(std::move(rows));
}

Element GroupTable::pow(Element a, std::int64_t e) const {
  e = mod_floor(e, order_[a]);
  Element r = identity_;
  Element base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

CommutingPair sl2_act(GroupTable const& G, CommutingPair pair, IntMatrix2 const& m) {
  if (m.det() != 1) throw DomainError("matrix is not in SL2(Z)");
  if (!G.commutes(pair.g, pair.h)) throw DomainError("pair does not commute");
  return {G.mul(G.pow(pair.g, m.a), G.pow(pair.h, m.c)), G.mul(G.pow(pair.g, m.b), G.pow(pair.h, m.d))};
}

CanonicalPair pair_canonicalize(GroupTable const& G, CommutingPair pair, CanonicalMode mode) {
  if (!G.commutes(pair.g, pair.h)) throw DomainError("pair does not commute");
  std::int64_t shifts = mode == CanonicalMode::conjugation ? 1 : G.element_order(pair.g);
  CanonicalPair best{pair, 0};
  std::int64_t best_j = 0;
  bool found = false;
  Element gj_h = pair.h;
  for (std::int64_t j = 0; j < shifts; ++j) {
    for (Element x = 0; x < G.order(); ++x) {
      CommutingPair c{G.conj(x, pair.g), G.conj(x, gj_h)};
      if (!found || c < best.pair) {
        best.pair = c;
        best_j = j;
        found = true;
      }
    }
    gj_h = G.mul(pair.g, gj_h);
  }
  // Conjugating by x sends (g, h) to (c.g, c.g^-j c.h).
  best.offset = shifts == 1 ? 0 : mod_floor(-best_j, shifts);
  return best;
}

std::vector<std::int64_t> translation_stabilizer(GroupTable const& G, CommutingPair pair) {
  CommutingPair base = pair_canonicalize(G, pair, CanonicalMode::conjugation).pair;
  std::vector<std::int64_t> out;
  Element gj_h = pair.h;
  for (std::int64_t j = 0; j < G.element_order(pair.g); ++j) {
    if (pair_canonicalize(G, {pair.g, gj_h}, CanonicalMode::conjugation).pair == base) out.push_back(j);
    gj_h = G.mul(pair.g, gj_h);
  }
  return out;
}

Components enumerate_components(GroupTable const& G) {
  std::map<CommutingPair, std::size_t> class_index;
  Components out;
  for (Element g = 0; g < G.order(); ++g)
    for (Element h = 0; h < G.order(); ++h)
      if (G.commutes(g, h)) {
        CommutingPair c = pair_canonicalize(G, {g, h}, CanonicalMode::conjugation).pair;
        class_index.emplace(c, 0);
      }
  for (auto& [c, i] : class_index) {
    i = out.classes.size();
    out.classes.push_back(c);
  }
  std::vector<std::size_t> parent(out.classes.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < out.classes.size(); ++i) {
    for (IntMatrix2 const& m : {IntMatrix2::S(), IntMatrix2::T()}) {
      CommutingPair image = pair_canonicalize(G, sl2_act(G, out.classes[i], m), CanonicalMode::conjugation).pair;
      std::size_t a = find(i);
      std::size_t b = find(class_index.at(image));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<std::size_t, std::size_t> orbit_number;
  for (std::size_t i = 0; i < out.classes.size(); ++i) {
    auto [it, inserted] = orbit_number.emplace(find(i), orbit_number.size());
    out.orbit.push_back(it->second);
  }
  out.orbit_count = orbit_number.size();
  return out;
}

}  // namespace moonshine
