#pragma once

#include <cstdint>
#include <vector>

namespace moonshine {

using Element = std::uint32_t;

/// Finite group given by its multiplication table; elements are 0..order-1.
class GroupTable {
 public:
  /// rows[a][b] = a*b. Checks closure, associativity, identity and inverses;
  /// throws DomainError when an axiom fails.
  static GroupTable from_table(std::vector<std::vector<Element>> rows);
  /// Closure of the given permutations (images of 0..n-1) under composition,
  /// with (a*b)(x) = a(b(x)). The identity becomes element 0 and the
  /// generators follow in order.
  static GroupTable from_permutations(std::vector<std::vector<std::uint32_t>> const& generators);
  static GroupTable cyclic(std::uint32_t n);
  /// Direct product; element (x, y) has index x * right.order() + y.
  static GroupTable product(GroupTable const& left, GroupTable const& right);

  std::uint32_t order() const { return n_; }
  Element identity() const { return identity_; }
  Element mul(Element a, Element b) const { return table_[a * n_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  Element pow(Element a, std::int64_t e) const;
  std::uint32_t element_order(Element a) const { return order_[a]; }
  bool commutes(Element a, Element b) const { return mul(a, b) == mul(b, a); }
  /// x a x^-1
  Element conj(Element x, Element a) const { return mul(mul(x, a), inverse_[x]); }

 private:
  std::uint32_t n_ = 0;
  Element identity_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::vector<std::uint32_t> order_;
};

struct CommutingPair {
  Element g = 0;
  Element h = 0;

  friend bool operator==(CommutingPair const&, CommutingPair const&) = default;
  friend auto operator<=>(CommutingPair const&, CommutingPair const&) = default;
};

struct IntMatrix2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  std::int64_t det() const { return a * d - b * c; }
  friend IntMatrix2 operator*(IntMatrix2 const& x, IntMatrix2 const& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(IntMatrix2 const&, IntMatrix2 const&) = default;

  static IntMatrix2 S() { return {0, -1, 1, 0}; }
  static IntMatrix2 T() { return {1, 1, 0, 1}; }
};

/// Right action (g, h) * (a b; c d) = (g^a h^c, g^b h^d). The pair must
/// commute and the matrix must have determinant 1.
CommutingPair sl2_act(GroupTable const& G, CommutingPair pair, IntMatrix2 const& m);

enum class CanonicalMode { conjugation, conjugation_and_translation };

struct CanonicalPair {
  CommutingPair pair;
  /// (g, h) is simultaneously conjugate to (pair.g, pair.g^offset pair.h), so
  /// f(g, h, tau) = f(pair, tau + offset). Always 0 in conjugation mode.
  std::int64_t offset = 0;
};

/// Lexicographically least pair among simultaneous conjugates (and, in
/// translation mode, among conjugates of (g, g^j h)). Ties in translation
/// mode resolve to the smallest j.
CanonicalPair pair_canonicalize(GroupTable const& G, CommutingPair pair, CanonicalMode mode);

/// Residues j mod |g| with (g, g^j h) simultaneously conjugate to (g, h).
/// They form a subgroup of Z/|g|; a series attached to (g, h) must be
/// invariant under tau -> tau + j for each of them.
std::vector<std::int64_t> translation_stabilizer(GroupTable const& G, CommutingPair pair);

struct Components {
  /// Conjugation-canonical representatives, sorted.
  std::vector<CommutingPair> classes;
  /// SL2(Z)-orbit index of each class; orbits numbered by first appearance.
  std::vector<std::size_t> orbit;
  std::size_t orbit_count = 0;
};

/// Simultaneous-conjugacy classes of commuting pairs and their SL2(Z) orbits,
/// the latter found by closing under S and T.
Components enumerate_components(GroupTable const& G);

}  // namespace moonshine
