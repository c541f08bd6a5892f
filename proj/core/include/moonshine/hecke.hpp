#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "moonshine/error.hpp"
#include "moonshine/groups.hpp"
#include "moonshine/qseries.hpp"

namespace moonshine {

/// Series attached to commuting pairs, stored once per class under
/// conjugation and translation (g, h) ~ (g, g h). Lookups of other pairs apply
/// f(g, g^k h, tau) = f(g, h, tau + k).
class EquivariantFamily {
 public:
  explicit EquivariantFamily(std::shared_ptr<GroupTable const> group);

  GroupTable const& group() const { return *group_; }
  std::shared_ptr<GroupTable const> const& group_ptr() const { return group_; }
  std::map<CommutingPair, PuiseuxSeries> const& entries() const { return table_; }

  CanonicalPair canonical(CommutingPair pair) const;

  /// Store f(pair). The series must have exponents in (1/|g|)Z and be
  /// invariant under the translations fixing the class; DomainError otherwise.
  void set(CommutingPair pair, PuiseuxSeries series);
  /// Store without the exponent and stabilizer checks. The result need not be
  /// a well-defined function on pairs; meant for negative controls.
  void set_unchecked(CommutingPair pair, PuiseuxSeries series);
  bool has(CommutingPair pair) const;
  /// f(pair); throws IncompleteFamilyError when the class has no entry.
  PuiseuxSeries at(CommutingPair pair) const;

 private:
  std::shared_ptr<GroupTable const> group_;
  std::shared_ptr<std::vector<CanonicalPair> const> canon_;  // index g * order + h
  std::map<CommutingPair, PuiseuxSeries> table_;
};

struct IsogenyTriple {
  std::int64_t a, b, d;
  bool primitive;
};

/// All (a, b, d) with ad = n and 0 <= b < d, ordered by d then b.
std::vector<IsogenyTriple> isogeny_oracle(std::int64_t n);

/// n T_n f(g, h, tau) = sum over ad = n, 0 <= b < d of f(g^d, g^-b h^a, (a tau + b)/d).
PuiseuxSeries hecke_apply(EquivariantFamily const& f, std::int64_t n, CommutingPair pair);

struct SeriesComparison {
  Verdict verdict = Verdict::inconclusive;
  std::optional<Rational> window;            // common exclusive bound, nullopt if both exact
  std::optional<Rational> first_difference;  // set on fail
  PuiseuxSeries lhs;
  PuiseuxSeries rhs;
};

/// Exact comparison inside the common window. Inconclusive when the window
/// does not reach past the lowest stored exponent of either side.
SeriesComparison compare_series(PuiseuxSeries lhs, PuiseuxSeries rhs);

/// km T_k T_m f(g, h) against sum over t | (k, m) of t (km/t^2) T_{km/t^2} f(g^t, h^t).
SeriesComparison hecke_compose_check(EquivariantFamily const& f, std::int64_t k, std::int64_t m, CommutingPair pair);

/// Seeded family on every class of G: exponent numerators in [-2, K] over |g|,
/// coefficients drawn from a fixed small cyclotomic set, precision (K+1)/|g|.
/// Exponents are restricted to those compatible with the class's translation
/// stabilizer.
EquivariantFamily random_family(std::shared_ptr<GroupTable const> group, std::int64_t K, std::uint64_t seed);

}  // namespace moonshine
