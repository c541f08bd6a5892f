#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "moonshine/error.hpp"
#include "moonshine/hecke.hpp"
#include "moonshine/polynomial.hpp"
#include "moonshine/qseries.hpp"

namespace moonshine {

/// A normalized series q^-1 + sum_{k>0} a_k q^k has integer exponents and no
/// constant term. Throws DomainError otherwise.
void require_normalized(PuiseuxSeries const& f);

struct Normalization {
  PuiseuxSeries series;  // f - a_0
  CycNum shift;          // the a_0 that was removed
};

/// Subtract the constant term of q^-1 + a_0 + O(q); the leading term must
/// already be q^-1 with integer exponents.
Normalization normalize_constant(PuiseuxSeries const& f);

/// Coefficients a_1..a_K of a normalized series, K = largest known index.
std::vector<CycNum> coefficient_list(PuiseuxSeries const& f);
/// q^-1 + sum_{k=1}^{coeffs.size()} coeffs[k-1] q^k, known up to that index.
PuiseuxSeries series_from_coefficients(std::vector<CycNum> const& coeffs);

/// Monic Phi_n with Phi_n(f) = q^-n + O(q). InconclusiveError when the
/// constant term of f^n is not known.
Polynomial faber(PuiseuxSeries const& f, std::int64_t n);

/// H_{m,n} with 1 <= m, n <= order; entries outside the known window are absent.
class HTable {
 public:
  HTable() = default;
  HTable(std::int64_t order, std::map<std::pair<std::int64_t, std::int64_t>, CycNum> values);

  std::int64_t order() const { return order_; }
  auto const& values() const { return values_; }
  bool knows(std::int64_t m, std::int64_t n) const { return values_.count({m, n}) != 0; }
  /// Throws InconclusiveError when (m, n) is outside the window.
  CycNum const& at(std::int64_t m, std::int64_t n) const;
  void set(std::int64_t m, std::int64_t n, CycNum v) { values_.insert_or_assign({m, n}, std::move(v)); }

 private:
  std::int64_t order_ = 0;
  std::map<std::pair<std::int64_t, std::int64_t>, CycNum> values_;
};

/// H_{m,n} from log((f(p) - f(q))/(p^-1 - q^-1)) = -sum H_{m,n} p^m q^n, for
/// m, n <= order. With f known through a_K, entries with m + n <= K + 1 are
/// exact; a full table needs K >= 2 order - 1.
HTable bivarial(PuiseuxSeries const& f, std::int64_t order);

/// Same transform limited to rows m <= rows and columns n <= cols.
HTable bivarial_rect(PuiseuxSeries const& f, std::int64_t rows, std::int64_t cols);

struct IndexedReport {
  Verdict verdict = Verdict::inconclusive;
  /// First failing position (meaning depends on the check), set on fail.
  std::optional<std::pair<std::int64_t, std::int64_t>> location;
  std::string detail;
};

/// Phi_n(f) = q^-n + n sum_m H_{m,n} q^m for 1 <= m <= M; location = (m, n).
IndexedReport faber_h_consistency(PuiseuxSeries const& f, std::int64_t n, std::int64_t M);
IndexedReport faber_h_consistency(PuiseuxSeries const& f, std::int64_t n, std::int64_t M, HTable const& H);

struct ReplicateSet {
  PuiseuxSeries base;
  std::map<std::int64_t, PuiseuxSeries> replicates;  // t -> f^(t); t = 1 is base
};

struct ReplicateResult {
  IndexedReport report;  // location = (m, n) of the first failed identity
  ReplicateSet set;
};

/// Solves a^(t)_k = t (H_{t,tk} - sum_{s|t, s<t} a^(s)_{t^2 k/s^2} / s) for
/// t <= T and k <= M, then checks H_{m,n} = sum_{t|(m,n)} a^(t)_{mn/t^2} / t on
/// every table entry whose replicate coefficients are available. Needs f
/// through index T^2 M; less precision yields an inconclusive report.
ReplicateResult extract_replicates(PuiseuxSeries const& f, std::int64_t T, std::int64_t M);

/// H_{m,n} = H_{m',n'} whenever gcd and product agree, all indices <= M;
/// location = the later pair of the first disagreeing two.
IndexedReport replicability_check(PuiseuxSeries const& f, std::int64_t M);

/// Every f^(t), t <= T, is replicable at order (M+1)/2 and its s-th replicate
/// matches f^(st) for st <= T. Replicates are extracted to index M.
IndexedReport complete_replicability_check(PuiseuxSeries const& f, std::int64_t T, std::int64_t M);

struct ExtendResult {
  /// pass: f^(1) reached the target; fail: inconsistent equations (location =
  /// (t, K)); inconclusive: the system stalled before the target.
  IndexedReport report;
  std::map<std::int64_t, PuiseuxSeries> replicates;
};

/// Extends a completely replicable f and its replicates from their first
/// coefficients. partials[t] lists a^(t)_1, a^(t)_2, ...; target is the index
/// f^(1) should reach. With an order N, f^(u) = f^(u+N) resolves replicate
/// indices not listed.
ExtendResult extend_from_partial(std::map<std::int64_t, std::vector<CycNum>> const& partials, std::int64_t target,
                                 std::optional<std::int64_t> order = std::nullopt);

/// Family on Z/N with f(1, g^m, tau) = f^(m). Needs f^(1..N) in the set and
/// f^(m) = f^(m+N) wherever both are present; DomainError otherwise.
EquivariantFamily hecke_replication_bridge(ReplicateSet const& set, std::int64_t N);
/// f^(m) = f(1, g^m) for m = 1..N, read back from a family on Z/N.
ReplicateSet replicates_from_family(EquivariantFamily const& family);

}  // namespace moonshine
