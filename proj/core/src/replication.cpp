#include "moonshine/replication.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "moonshine/arith.hpp"
#include "moonshine/biseries.hpp"

namespace moonshine {

namespace {

using Pair = std::pair<std::int64_t, std::int64_t>;

std::string pair_text(std::int64_t m, std::int64_t n) { return "(" + std::to_string(m) + "," + std::to_string(n) + ")"; }

// Largest k with a_k known; nullopt for an exact series.
std::optional<std::int64_t> known_index(PuiseuxSeries const& f) {
  if (!f.bound()) return std::nullopt;
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), f.bound()->get_num_mpz_t(), f.bound()->get_den_mpz_t());
  return c.get_si() - 1;
}

bool covers(std::optional<std::int64_t> known, std::int64_t k) { return !known || *known >= k; }

}  // namespace

void require_normalized(PuiseuxSeries const& f) {
  if (f.denominator() != 1) throw DomainError("normalized series needs integer exponents");
  if (f.valuation() != -1 || !f.leading_coefficient().is_one()) throw DomainError("normalized series must start q^-1");
  if (!f.knows(0)) throw DomainError("constant term of the series is not known");
  if (!f.coefficient_at(0).is_zero()) throw DomainError("normalized series must have zero constant term");
}

Normalization normalize_constant(PuiseuxSeries const& f) {
  if (f.denominator() != 1 || f.valuation() != -1 || !f.leading_coefficient().is_one())
    throw DomainError("series must have the form q^-1 + a_0 + O(q) with integer exponents");
  if (!f.knows(0)) throw InconclusiveError("constant term of the series is not known");
  CycNum a0 = f.coefficient_at(0);
  return {f - PuiseuxSeries::constant(a0), a0};
}

std::vector<CycNum> coefficient_list(PuiseuxSeries const& f) {
  require_normalized(f);
  std::int64_t K = known_index(f).value_or(f.terms().rbegin()->first);
  std::vector<CycNum> out;
  for (std::int64_t k = 1; k <= K; ++k) out.push_back(f.coefficient_at(k));
  return out;
}

PuiseuxSeries series_from_coefficients(std::vector<CycNum> const& coeffs) {
  PuiseuxSeries::Terms terms;
  terms.emplace(-1, CycNum(1L));
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (!coeffs[k].is_zero()) terms.emplace(static_cast<std::int64_t>(k) + 1, coeffs[k]);
  return PuiseuxSeries::from_terms(1, std::move(terms), Rational(static_cast<long>(coeffs.size()) + 1));
}

Polynomial faber(PuiseuxSeries const& f, std::int64_t n) {
  require_normalized(f);
  if (n < 1) throw DomainError("Faber index must be positive");
  std::vector<PuiseuxSeries> powers{PuiseuxSeries::constant(CycNum(1L))};
  for (std::int64_t k = 1; k <= n; ++k) powers.push_back(powers.back() * f);
  PuiseuxSeries rest = powers.back();
  if (!rest.knows(0))
    throw InconclusiveError("f^" + std::to_string(n) + " is not known up to its constant term");
  std::vector<CycNum> b(static_cast<std::size_t>(n) + 1);
  b.back() = CycNum(1L);
  for (std::int64_t k = n - 1; k >= 0; --k) {
    CycNum c = rest.coefficient_at(-k);
    if (c.is_zero()) continue;
    rest -= powers[static_cast<std::size_t>(k)] * c;
    b[static_cast<std::size_t>(k)] = -c;
  }
  return Polynomial(std::move(b));
}

HTable::HTable(std::int64_t order, std::map<std::pair<std::int64_t, std::int64_t>, CycNum> values)
    : order_(order), values_(std::move(values)) {}

CycNum const& HTable::at(std::int64_t m, std::int64_t n) const {
  auto it = values_.find({m, n});
  if (it == values_.end()) throw InconclusiveError("H" + pair_text(m, n) + " lies outside the known window");
  return it->second;
}

HTable bivarial_rect(PuiseuxSeries const& f, std::int64_t rows, std::int64_t cols) {
  require_normalized(f);
  std::optional<std::int64_t> K = known_index(f);
  // (f(p) - f(q))/(p^-1 - q^-1) = 1 - sum_k a_k sum_{i+j=k-1} p^(i+1) q^(j+1).
  BiSeries::Rows Q;
  Q.emplace(0, PuiseuxSeries::constant(CycNum(1L)));
  for (std::int64_t m = 1; m <= rows; ++m) {
    std::int64_t last = cols;
    if (K) last = std::min(last, *K - m + 1);
    PuiseuxSeries::Terms terms;
    for (std::int64_t n = 1; n <= last; ++n) {
      CycNum a = f.coefficient_at(m + n - 1);
      if (!a.is_zero()) terms.emplace(n, -a);
    }
    Q.emplace(m, PuiseuxSeries::from_terms(1, std::move(terms), Rational(std::max<std::int64_t>(last + 1, 1))));
  }
  BiSeries L = BiSeries::from_rows(1, std::move(Q), Rational(rows + 1)).log();
  std::map<Pair, CycNum> values;
  for (std::int64_t m = 1; m <= rows; ++m) {
    PuiseuxSeries row = L.row(m);
    for (std::int64_t n = 1; n <= cols; ++n)
      if (row.knows(n)) values.emplace(Pair{m, n}, -row.coefficient_at(n));
  }
  return HTable(std::max(rows, cols), std::move(values));
}

HTable bivarial(PuiseuxSeries const& f, std::int64_t order) { return bivarial_rect(f, order, order); }

IndexedReport faber_h_consistency(PuiseuxSeries const& f, std::int64_t n, std::int64_t M) {
  return faber_h_consistency(f, n, M, bivarial(f, std::max(n, M)));
}

IndexedReport faber_h_consistency(PuiseuxSeries const& f, std::int64_t n, std::int64_t M, HTable const& H) {
  IndexedReport r;
  PuiseuxSeries lhs = faber(f, n)(f);
  // Principal part and constant term are q^-n exactly.
  for (std::int64_t e = -n; e <= 0; ++e) {
    if (!(lhs.coefficient_at(e) == CycNum(e == -n ? 1L : 0L))) {
      r.verdict = Verdict::fail;
      r.location = Pair{e, n};
      r.detail = "Phi_" + std::to_string(n) + "(f) has a wrong coefficient at q^" + std::to_string(e);
      return r;
    }
  }
  bool complete = true;
  for (std::int64_t m = 1; m <= M; ++m) {
    if (!lhs.knows(m) || !H.knows(m, n)) {
      complete = false;
      continue;
    }
    if (!(lhs.coefficient_at(m) == H.at(m, n) * CycNum(static_cast<long>(n)))) {
      r.verdict = Verdict::fail;
      r.location = Pair{m, n};
      r.detail = "coefficient of q^" + std::to_string(m) + " in Phi_" + std::to_string(n) + "(f) is " +
                 lhs.coefficient_at(m).to_string() + ", expected n*H" + pair_text(m, n) + " = " +
                 (H.at(m, n) * CycNum(static_cast<long>(n))).to_string();
      return r;
    }
  }
  r.verdict = complete ? Verdict::pass : Verdict::inconclusive;
  if (!complete) r.detail = "some coefficients up to q^" + std::to_string(M) + " are outside the window";
  return r;
}

namespace {

// Replicate coefficients a^(t)_k computed on demand from an H table.
class ReplicateSolver {
 public:
  ReplicateSolver(PuiseuxSeries const& f, HTable const& H) : f_(f), known_(known_index(f)), H_(H) {}

  std::optional<CycNum> a(std::int64_t t, std::int64_t k) {
    if (t == 1) {
      if (!covers(known_, k)) return std::nullopt;
      return f_.coefficient_at(k);
    }
    if (auto it = memo_.find({t, k}); it != memo_.end()) return it->second;
    std::optional<CycNum> result;
    if (H_.knows(t, t * k)) {
      CycNum acc = H_.at(t, t * k);
      bool ok = true;
      for (std::int64_t s : divisors(t)) {
        if (s == t) continue;
        auto v = a(s, t * t * k / (s * s));
        if (!v) {
          ok = false;
          break;
        }
        acc -= *v * CycNum(make_rational(1, s));
      }
      if (ok) result = acc * CycNum(t);
    }
    memo_.emplace(Pair{t, k}, result);
    return result;
  }

 private:
  PuiseuxSeries const& f_;
  std::optional<std::int64_t> known_;
  HTable const& H_;
  std::map<Pair, std::optional<CycNum>> memo_;
};

}  // namespace

ReplicateResult extract_replicates(PuiseuxSeries const& f, std::int64_t T, std::int64_t M) {
  require_normalized(f);
  if (T < 1 || M < 1) throw DomainError("replicate count and order must be positive");
  ReplicateResult out;
  out.set.base = f;
  std::optional<std::int64_t> known = known_index(f);
  if (!covers(known, T * T * M)) {
    out.report.verdict = Verdict::inconclusive;
    out.report.detail = "replicates to index " + std::to_string(M) + " need a_k for k <= " + std::to_string(T * T * M) +
                        ", series known to " + std::to_string(*known);
    return out;
  }
  std::int64_t rows = std::max(T, M);
  std::int64_t cols = std::max(T * T * M, M * M);
  HTable H = bivarial_rect(f, rows, cols);
  ReplicateSolver solver(f, H);

  out.set.replicates.emplace(1, f);
  for (std::int64_t t = 2; t <= T; ++t) {
    std::vector<CycNum> coeffs;
    for (std::int64_t k = 1; k <= M; ++k) {
      auto v = solver.a(t, k);
      if (!v) throw InconclusiveError("replicate coefficient a^(" + std::to_string(t) + ")_" + std::to_string(k) +
                                      " is outside the window");
      coeffs.push_back(*v);
    }
    out.set.replicates.emplace(t, series_from_coefficients(coeffs));
  }

  // Every entry not used as a definition is a check of the replication identity.
  for (std::int64_t m = 1; m <= M; ++m) {
    for (std::int64_t n = 1; n <= M; ++n) {
      if (!H.knows(m, n)) continue;
      CycNum sum;
      bool available = true;
      for (std::int64_t t : divisors(std::gcd(m, n))) {
        auto v = solver.a(t, m * n / (t * t));
        if (!v) {
          available = false;
          break;
        }
        sum += *v * CycNum(make_rational(1, t));
      }
      if (available && !(sum == H.at(m, n))) {
        out.report.verdict = Verdict::fail;
        out.report.location = Pair{m, n};
        out.report.detail = "H" + pair_text(m, n) + " = " + H.at(m, n).to_string() +
                            " differs from the replicate sum " + sum.to_string();
        return out;
      }
    }
  }
  out.report.verdict = Verdict::pass;
  return out;
}

IndexedReport replicability_check(PuiseuxSeries const& f, std::int64_t M) {
  HTable H = bivarial(f, M);
  IndexedReport r;
  std::map<Pair, Pair> first;  // (gcd, product) -> first pair seen
  bool complete = true;
  for (std::int64_t m = 1; m <= M; ++m) {
    for (std::int64_t n = 1; n <= M; ++n) {
      if (!H.knows(m, n)) {
        complete = false;
        continue;
      }
      auto [it, inserted] = first.emplace(Pair{std::gcd(m, n), m * n}, Pair{m, n});
      if (inserted) continue;
      auto [m0, n0] = it->second;
      if (!(H.at(m, n) == H.at(m0, n0))) {
        r.verdict = Verdict::fail;
        r.location = Pair{m, n};
        r.detail = "H" + pair_text(m, n) + " = " + H.at(m, n).to_string() + " but H" + pair_text(m0, n0) + " = " +
                   H.at(m0, n0).to_string();
        return r;
      }
    }
  }
  r.verdict = complete ? Verdict::pass : Verdict::inconclusive;
  if (!complete) r.detail = "the H table up to order " + std::to_string(M) + " is not fully known";
  return r;
}

IndexedReport complete_replicability_check(PuiseuxSeries const& f, std::int64_t T, std::int64_t M) {
  IndexedReport r;
  ReplicateResult base = extract_replicates(f, T, M);
  if (base.report.verdict != Verdict::pass) {
    r = base.report;
    if (r.verdict == Verdict::fail) r.detail = "f is not replicable: " + r.detail;
    return r;
  }
  bool complete = true;
  for (auto const& [t, ft] : base.set.replicates) {
    IndexedReport own = replicability_check(ft, (M + 1) / 2);
    if (own.verdict == Verdict::fail) {
      r.verdict = Verdict::fail;
      r.location = Pair{t, 1};
      r.detail = "replicate f^(" + std::to_string(t) + ") is not replicable: " + own.detail;
      return r;
    }
    complete = complete && own.verdict == Verdict::pass;
    // The replicates of f^(1) are the extraction itself.
    for (std::int64_t s = 2; t > 1 && s * t <= T; ++s) {
      std::int64_t depth = M / (s * s);
      if (depth < 1) {
        complete = false;
        continue;
      }
      ReplicateResult inner = extract_replicates(ft, s, depth);
      if (inner.report.verdict != Verdict::pass) {
        complete = false;
        continue;
      }
      PuiseuxSeries const& power = inner.set.replicates.at(s);
      PuiseuxSeries const& direct = base.set.replicates.at(s * t);
      if (auto d = PuiseuxSeries::first_difference(power, direct)) {
        r.verdict = Verdict::fail;
        r.location = Pair{t, s};
        r.detail = "the " + std::to_string(s) + "-th replicate of f^(" + std::to_string(t) + ") differs from f^(" +
                   std::to_string(s * t) + ") at q^" + d->get_str();
        return r;
      }
    }
  }
  r.verdict = complete ? Verdict::pass : Verdict::inconclusive;
  if (!complete) r.detail = "some replication powers could not be compared at this precision";
  return r;
}

ExtendResult extend_from_partial(std::map<std::int64_t, std::vector<CycNum>> const& partials, std::int64_t target,
                                 std::optional<std::int64_t> order) {
  if (order && *order < 1) throw DomainError("order must be positive");
  auto resolve = [&](std::int64_t u) { return order ? mod_floor(u - 1, *order) + 1 : u; };
  std::map<std::int64_t, std::vector<CycNum>> coeffs;
  for (auto const& [t, c] : partials) {
    if (t < 1) throw DomainError("replicate index must be positive");
    auto [it, inserted] = coeffs.emplace(resolve(t), c);
    if (!inserted && it->second != c) throw DomainError("partials disagree with the given order");
  }
  if (!coeffs.count(1)) throw DomainError("coefficients of f = f^(1) are required");

  ExtendResult out;
  for (auto rit = coeffs.rbegin(); rit != coeffs.rend(); ++rit) {
    std::int64_t t = rit->first;
    std::vector<CycNum>& mine = rit->second;
    std::size_t given = mine.size();
    for (std::int64_t K = 1; K <= target; ++K) {
      bool unknown = static_cast<std::size_t>(K) > given;
      std::vector<CycNum> current(mine.begin(), mine.begin() + std::min<std::size_t>(mine.size(), K));
      if (unknown) current.resize(static_cast<std::size_t>(K));  // a_K = 0 for now
      HTable H = bivarial_rect(series_from_coefficients(current), K, K);

      // Affine forms alpha x + beta in x = a^(t)_K.
      struct Form {
        Rational alpha;
        CycNum beta;
      };
      auto coefficient = [&](std::int64_t u, std::int64_t j, Form& form, Rational const& weight) {
        std::int64_t v = resolve(u);
        auto it = coeffs.find(v);
        if (it == coeffs.end()) return false;
        if (v == t && j == K && unknown) {
          form.alpha += weight;
          return true;
        }
        if (j < 1 || static_cast<std::size_t>(j) > it->second.size()) return false;
        form.beta += it->second[static_cast<std::size_t>(j - 1)] * CycNum(weight);
        return true;
      };
      std::map<std::int64_t, std::vector<Form>> classes;
      std::set<std::int64_t> relevant{K};
      for (std::int64_t m = 1; m <= K; ++m) {
        for (std::int64_t n = m; m + n - 1 <= K; ++n) {
          Form g{Rational(m + n - 1 == K && unknown ? 1 : 0), H.at(m, n)};
          bool ok = true;
          for (std::int64_t s : divisors(std::gcd(m, n))) {
            if (s == 1) continue;
            ok = coefficient(s * t, m * n / (s * s), g, -make_rational(1, s));
            if (!ok) break;
          }
          if (!ok) continue;
          classes[m * n].push_back(g);
          if (m + n - 1 == K) relevant.insert(m * n);
        }
      }
      // Equations alpha x = rhs from each relevant class.
      std::vector<std::pair<Rational, CycNum>> equations;
      for (std::int64_t P : relevant) {
        auto& forms = classes[P];
        if (P <= K) {
          Form a{Rational(0), CycNum()};
          if (coefficient(t, P, a, Rational(1))) forms.push_back(a);
        }
        for (std::size_t i = 1; i < forms.size(); ++i)
          equations.emplace_back(forms[i].alpha - forms[0].alpha, forms[0].beta - forms[i].beta);
      }
      std::optional<CycNum> x;
      if (unknown) {
        for (auto const& [alpha, rhs] : equations)
          if (alpha != 0) {
            x = rhs * CycNum(Rational(1 / alpha));
            break;
          }
      }
      bool consistent = true;
      for (auto const& [alpha, rhs] : equations) {
        CycNum lhs = alpha == 0 ? CycNum() : CycNum(alpha) * x.value_or(CycNum());
        if (alpha != 0 && !x) continue;
        if (!(lhs == rhs)) consistent = false;
      }
      if (!consistent) {
        out.report.verdict = Verdict::fail;
        out.report.location = Pair{t, K};
        out.report.detail = "equations for a^(" + std::to_string(t) + ")_" + std::to_string(K) + " are inconsistent";
        for (auto const& [u, c] : coeffs) out.replicates.emplace(u, series_from_coefficients(c));
        return out;
      }
      if (unknown) {
        if (!x) break;  // stalled
        mine.push_back(*x);
      }
    }
  }
  for (auto const& [u, c] : coeffs) out.replicates.emplace(u, series_from_coefficients(c));
  std::size_t reached = coeffs.at(1).size();
  if (reached >= static_cast<std::size_t>(target)) {
    out.report.verdict = Verdict::pass;
  } else {
    out.report.verdict = Verdict::inconclusive;
    out.report.location = Pair{1, static_cast<std::int64_t>(reached) + 1};
    out.report.detail = "no equation determines a_" + std::to_string(reached + 1);
  }
  return out;
}

EquivariantFamily hecke_replication_bridge(ReplicateSet const& set, std::int64_t N) {
  if (N < 1) throw DomainError("order must be positive");
  for (std::int64_t m = 1; m <= N; ++m)
    if (!set.replicates.count(m)) throw DomainError("replicate f^(" + std::to_string(m) + ") is missing");
  for (auto const& [m, fm] : set.replicates) {
    auto const& base = set.replicates.at(mod_floor(m - 1, N) + 1);
    if (PuiseuxSeries::first_difference(fm, base))
      throw DomainError("f^(" + std::to_string(m) + ") differs from f^(" + std::to_string(mod_floor(m - 1, N) + 1) +
                        "): the set does not have order " + std::to_string(N));
  }
  EquivariantFamily family(std::make_shared<GroupTable const>(GroupTable::cyclic(static_cast<std::uint32_t>(N))));
  for (std::int64_t m = 1; m <= N; ++m)
    family.set({0, static_cast<Element>(m % N)}, set.replicates.at(m));
  return family;
}

ReplicateSet replicates_from_family(EquivariantFamily const& family) {
  std::int64_t N = family.group().order();
  ReplicateSet set;
  for (std::int64_t m = 1; m <= N; ++m) set.replicates.emplace(m, family.at({0, static_cast<Element>(m % N)}));
  set.base = set.replicates.at(1);
  return set;
}

}  // namespace moonshine
