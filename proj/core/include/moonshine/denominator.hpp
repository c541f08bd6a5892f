#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "moonshine/biseries.hpp"
#include "moonshine/error.hpp"
#include "moonshine/hecke.hpp"
#include "moonshine/monic.hpp"

namespace moonshine {

/// Traces Tr(h^e | V^{i, j/N}_{K/N}) of a central g of order N and an h of
/// order h_order. Indices i, j are taken mod N and e mod h_order (e = h_order
/// is the identity, so those entries are dimensions). Every trace with
/// K <= max_grading is known; absent entries are zero.
class ModuleCharacterData {
 public:
  using Key = std::array<std::int64_t, 4>;  // i, j, K, e

  ModuleCharacterData(std::int64_t N, std::int64_t h_order, std::int64_t max_grading);

  std::int64_t N() const { return N_; }
  std::int64_t h_order() const { return h_order_; }
  std::int64_t max_grading() const { return max_grading_; }
  std::map<Key, CycNum> const& traces() const { return traces_; }

  /// DomainError unless K = i j (mod N), the grading forced by the g-eigenvalue
  /// e(j/N) on a g^i-twisted slice, and K <= max_grading.
  void set(std::int64_t i, std::int64_t j, std::int64_t K, std::int64_t e, CycNum value);
  /// Zero when absent; InconclusiveError when K > max_grading.
  CycNum trace(std::int64_t i, std::int64_t j, std::int64_t K, std::int64_t e) const;
  bool knows(std::int64_t K) const { return K <= max_grading_; }

  /// g = 1 data whose dimensions are the coefficients of f: dim V_{1+n} = a_n.
  static ModuleCharacterData from_series(PuiseuxSeries const& f);

 private:
  Key normalize(std::int64_t i, std::int64_t j, std::int64_t K, std::int64_t e) const;

  std::int64_t N_;
  std::int64_t h_order_;
  std::int64_t max_grading_;
  std::map<Key, CycNum> traces_;
};

/// Tr(h | V^{1,-1/N}_{1-1/N}) at h = identity; the slice should be one-dimensional.
CycNum pole_slice_dimension(ModuleCharacterData const& data);

/// Z(g^k, g^l h^m, tau) = sum_n sum_{r: n in kr + Z} Tr(g^l h^m | V^{k,r}_{1+n}) q^n,
/// known for 1 + n <= max_grading / N.
PuiseuxSeries orbifold_partition(ModuleCharacterData const& data, std::int64_t k, std::int64_t l, std::int64_t m);

struct DenominatorSides {
  BiSeries lhs;  // p times the sum side
  BiSeries rhs;  // exp(-sum_i sum_{m,n} Tr(h^(si) | V^{m,n}_{1+mn}) p^(im) q^(in) / i)
};

/// Both sides of the twisted denominator formula for h^s, multiplied by p.
DenominatorSides denominator_sides(ModuleCharacterData const& data, std::int64_t s, std::int64_t p_max);

struct DenominatorReport {
  Verdict verdict = Verdict::inconclusive;
  std::int64_t h_power = 0;  // power of h where the first failure occurred
  /// (p, q) exponents of the first differing coefficient, p^-1 being the
  /// leading term of both sides.
  std::optional<std::pair<Rational, Rational>> location;
  std::string detail;
};

/// Compares both sides for every h^s in powers, at p^a q^b with a <= P and
/// b <= Q.
DenominatorReport denominator_verify(ModuleCharacterData const& data, std::vector<std::int64_t> const& powers,
                                     std::int64_t P, Rational const& Q);

/// The family Z on G = Z/N x Z/h_order, with g = (1, 0) and h = (0, 1).
EquivariantFamily orbifold_family(ModuleCharacterData const& data);

/// weak_monicity_check of orbifold_family at (g, g^l h^m) for n = 1..n_max.
std::vector<MonicityReport> fricke_monicity_suite(ModuleCharacterData const& data, std::int64_t l, std::int64_t m,
                                                  std::int64_t n_max);

}  // namespace moonshine
