#include "moonshine/monic.hpp"

#include "moonshine/arith.hpp"

namespace moonshine {

namespace {

std::int64_t floor_int(Rational const& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q.get_si();
}

CycNum conjugate(CycNum const& z) {
  std::int64_t L = z.conductor();
  std::vector<Rational> c(static_cast<std::size_t>(L));
  for (std::size_t i = 0; i < z.coeffs().size(); ++i)
    c[static_cast<std::size_t>(mod_floor(-static_cast<std::int64_t>(i), L))] = z.coeffs()[i];
  return CycNum::from_power_basis(L, std::move(c));
}

void require_pole(PuiseuxSeries const& F) {
  auto c = F.valuation_exponent();
  if (!c || *c >= 0) throw DomainError("series has no pole at infinity");
}

MonicityReport fit(PuiseuxSeries const& S, PuiseuxSeries const& F, std::int64_t degree, bool monic) {
  require_pole(F);
  if (degree < 0) throw DomainError("degree must be non-negative");
  Rational c = *F.valuation_exponent();
  CycNum zeta_inv = F.leading_coefficient().inverse();
  MonicityReport r;
  std::vector<PuiseuxSeries> powers{PuiseuxSeries::constant(CycNum(1L))};
  for (std::int64_t k = 1; k <= degree; ++k) powers.push_back(powers.back() * F);
  PuiseuxSeries rest = S;
  std::vector<CycNum> b(static_cast<std::size_t>(degree) + 1);
  for (std::int64_t k = degree; k >= 0; --k) {
    Rational e = c * k;
    if (!rest.knows(e)) {
      r.window = rest.bound();
      r.detail = "coefficient of q^" + e.get_str() + " is beyond the window";
      return r;
    }
    CycNum bk = rest.coefficient(e) * zeta_inv.pow(k);
    if (!bk.is_zero()) rest -= powers[static_cast<std::size_t>(k)] * bk;
    b[static_cast<std::size_t>(k)] = std::move(bk);
  }
  r.polynomial = Polynomial(b);
  r.window = rest.bound();
  if (monic && !b.back().is_one()) {
    r.verdict = Verdict::fail;
    r.first_failure = c * degree;
    r.detail = "x^" + std::to_string(degree) + " coefficient is " + b.back().to_string();
    return r;
  }
  if (auto v = rest.valuation_exponent()) {
    r.verdict = Verdict::fail;
    r.first_failure = *v;
    r.detail = "residual has coefficient " + rest.leading_coefficient().to_string() + " at q^" + v->get_str();
    return r;
  }
  r.verdict = Verdict::pass;
  return r;
}

}  // namespace

MonicityReport fit_polynomial(PuiseuxSeries const& S, PuiseuxSeries const& F, std::int64_t degree) {
  return fit(S, F, degree, false);
}

MonicityReport fit_polynomial(PuiseuxSeries const& S, PuiseuxSeries const& F) {
  require_pole(F);
  auto v = S.valuation_exponent();
  std::int64_t degree = 0;
  if (v && *v < 0) degree = floor_int(*v / *F.valuation_exponent());
  return fit(S, F, degree, false);
}

MonicityReport fit_monic(PuiseuxSeries const& S, PuiseuxSeries const& F, std::int64_t n) { return fit(S, F, n, true); }

std::vector<MonicityReport> weak_monicity_check(EquivariantFamily const& f, CommutingPair pair, std::int64_t n_max) {
  PuiseuxSeries F = f.at(pair);
  std::vector<MonicityReport> out;
  for (std::int64_t n = 1; n <= n_max; ++n) out.push_back(fit_monic(hecke_apply(f, n, pair), F, n));
  return out;
}

std::vector<PuiseuxSeries> modular_roots(EquivariantFamily const& f, CommutingPair pair, std::int64_t p) {
  GroupTable const& G = f.group();
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (G.pow(pair.g, p) != pair.g || G.pow(pair.h, p) != pair.h)
    throw DomainError("modular equation of order " + std::to_string(p) + " needs g^p = g and h^p = h");
  std::vector<PuiseuxSeries> roots;
  for (auto const& [a, b, d, primitive] : isogeny_oracle(p))
    roots.push_back(f.at({pair.g, G.mul(G.pow(pair.g, -b), pair.h)}).substitute_scaled(a, b, d));
  return roots;
}

BivariatePolynomial modular_equation(EquivariantFamily const& f, CommutingPair pair, std::int64_t p) {
  std::vector<PuiseuxSeries> roots = modular_roots(f, pair, p);
  PuiseuxSeries y = f.at(pair);
  // prod (x - r) with series coefficients, lowest power first.
  std::vector<PuiseuxSeries> coeffs{PuiseuxSeries::constant(CycNum(1L))};
  for (PuiseuxSeries const& r : roots) {
    std::vector<PuiseuxSeries> next(coeffs.size() + 1);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      next[j + 1] += coeffs[j];
      next[j] -= coeffs[j] * r;
    }
    coeffs = std::move(next);
  }
  BivariatePolynomial::Terms terms;
  terms.emplace(std::pair{0, static_cast<int>(p + 1)}, CycNum(1L));
  for (std::size_t j = 0; j + 1 < coeffs.size(); ++j) {
    MonicityReport fit = fit_polynomial(coeffs[j], y);
    if (fit.verdict == Verdict::inconclusive)
      throw InconclusiveError("x^" + std::to_string(j) + " coefficient of F_" + std::to_string(p) + ": " + fit.detail);
    if (fit.verdict == Verdict::fail)
      throw NotMonicError("x^" + std::to_string(j) + " coefficient of F_" + std::to_string(p) +
                          " is not a polynomial in f(g,h): " + fit.detail);
    auto const& b = fit.polynomial.coeffs();
    for (std::size_t i = 0; i < b.size(); ++i)
      if (!b[i].is_zero()) terms.emplace(std::pair{static_cast<int>(i), static_cast<int>(j)}, b[i]);
  }
  return BivariatePolynomial(std::move(terms));
}

std::vector<SeriesComparison> root_substitution_check(BivariatePolynomial const& F, EquivariantFamily const& f,
                                                      CommutingPair pair, std::int64_t p) {
  PuiseuxSeries y = f.at(pair);
  std::vector<SeriesComparison> out;
  for (PuiseuxSeries const& r : modular_roots(f, pair, p)) {
    PuiseuxSeries value = F(y, r);
    // Zero carrying the same window, so compare_series sees a real window.
    PuiseuxSeries zero = PuiseuxSeries::from_terms(1, {}, value.bound());
    out.push_back(compare_series(std::move(value), std::move(zero)));
  }
  return out;
}

Verdict symmetry_check(BivariatePolynomial const& F) {
  for (auto const& [ij, c] : F.terms())
    if (!(F.coefficient(ij.second, ij.first) == c)) return Verdict::fail;
  return Verdict::pass;
}

LeadingBehavior leading_behavior(PuiseuxSeries const& f, std::int64_t N, std::optional<std::int64_t> g_order) {
  require_pole(f);
  if (N < 1) throw DomainError("N must be positive");
  std::int64_t g = g_order.value_or(f.denominator());
  LeadingBehavior r;
  r.zeta = f.leading_coefficient();
  r.exponent = *f.valuation_exponent();
  Rational C = r.exponent * g;
  if (C.get_den() != 1) throw DomainError("leading exponent is not in (1/|g|)Z");
  r.C = C.get_num().get_si();
  r.root = r.zeta.classify_root_of_unity();
  r.zeta_order_ok = r.zeta.pow(2 * N).is_one();
  r.zeta_order_tight = r.zeta.pow(N).is_one();
  r.support = Verdict::pass;
  for (auto const& [k, c] : f.terms()) {
    Rational ratio = make_rational(k, f.denominator()) / r.exponent;
    if (ratio.get_den() != 1) {
      r.support = Verdict::fail;
      r.support_violation = make_rational(k, f.denominator());
      break;
    }
  }
  return r;
}

TrigTypeReport trig_type_detect(PuiseuxSeries const& f) {
  require_pole(f);
  TrigTypeReport r;
  Rational c = *f.valuation_exponent();
  CycNum lead = f.leading_coefficient();
  r.a = -1 / c;
  if (!(lead * conjugate(lead)).is_one()) {
    r.verdict = Verdict::fail;
    r.first_violation = c;
    r.detail = "leading coefficient " + lead.to_string() + " does not have absolute value 1";
    return r;
  }
  if (auto root = lead.classify_root_of_unity()) r.b = -make_rational(root->exponent, root->order) / c;
  if (f.knows(Rational(0))) r.a0 = f.coefficient_at(0);
  for (auto const& [k, coeff] : f.terms()) {
    Rational e = make_rational(k, f.denominator());
    if (e == c || e == 0) continue;
    if (e == -c) {
      r.zeta = coeff * lead;
      if (r.zeta.classify_root_of_unity()) continue;
      r.verdict = Verdict::fail;
      r.first_violation = e;
      r.detail = "coefficient " + r.zeta.to_string() + " of q is neither zero nor a root of unity";
      return r;
    }
    r.verdict = Verdict::fail;
    r.first_violation = e;
    r.detail = "nonzero coefficient at q^" + e.get_str() + " outside {" + c.get_str() + ", 0, " +
               Rational(-c).get_str() + "}";
    return r;
  }
  if (!f.knows(-c)) {
    r.detail = "coefficient of q^" + Rational(-c).get_str() + " is beyond the window";
    return r;
  }
  r.verdict = Verdict::pass;
  if (f.bound()) r.detail = "trigonometric form holds below q^" + f.bound()->get_str();
  return r;
}

}  // namespace moonshine
