#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moonshine/error.hpp"
#include "moonshine/hecke.hpp"
#include "moonshine/polynomial.hpp"
#include "moonshine/qseries.hpp"

namespace moonshine {

/// A symmetric function of modular-equation roots is not a polynomial in y.
class NotMonicError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct MonicityReport {
  Verdict verdict = Verdict::inconclusive;
  Polynomial polynomial;
  /// Exponent of the first nonzero residual coefficient (or of the leading
  /// coefficient when it is not 1).
  std::optional<Rational> first_failure;
  /// Residual S - P(F) is known for exponents below this; nullopt = exact.
  std::optional<Rational> window;
  std::string detail;
};

/// Writes S as P(F) with deg P <= degree by reading the coefficients of S at
/// exponents k c, c the leading exponent of F, then checks the residual.
/// DomainError when F has no pole.
MonicityReport fit_polynomial(PuiseuxSeries const& S, PuiseuxSeries const& F, std::int64_t degree);
/// Same, with the degree read off the leading exponent of S.
MonicityReport fit_polynomial(PuiseuxSeries const& S, PuiseuxSeries const& F);
/// fit_polynomial that also fails when the x^n coefficient is not 1.
MonicityReport fit_monic(PuiseuxSeries const& S, PuiseuxSeries const& F, std::int64_t n);

/// fit_monic(n T_n f(g, h), f(g, h), n) for n = 1..n_max.
std::vector<MonicityReport> weak_monicity_check(EquivariantFamily const& f, CommutingPair pair, std::int64_t n_max);

/// The p + 1 roots f(g, g^-b h, (a tau + b)/d), ad = p, ordered as isogeny_oracle.
std::vector<PuiseuxSeries> modular_roots(EquivariantFamily const& f, CommutingPair pair, std::int64_t p);

/// Monic F_p(y, x) of x-degree p + 1 whose roots in x are modular_roots and
/// whose coefficients are polynomials in y = f(g, h). Needs p prime with
/// g^p = g and h^p = h (DomainError otherwise); NotMonicError when a
/// coefficient is not a polynomial in y within the window.
BivariatePolynomial modular_equation(EquivariantFamily const& f, CommutingPair pair, std::int64_t p);

/// F(f(g, h), r) for every modular root r, compared against zero.
std::vector<SeriesComparison> root_substitution_check(BivariatePolynomial const& F, EquivariantFamily const& f,
                                                      CommutingPair pair, std::int64_t p);

/// pass iff the coefficient of y^i x^j equals that of y^j x^i for all i, j.
Verdict symmetry_check(BivariatePolynomial const& F);

struct LeadingBehavior {
  CycNum zeta;                       // leading coefficient
  Rational exponent;                 // leading exponent C / |g|
  std::int64_t C = 0;
  std::optional<RootOfUnity> root;   // set when zeta is a root of unity
  bool zeta_order_ok = false;        // zeta^(2N) = 1
  bool zeta_order_tight = false;     // zeta^N = 1, required when N is even
  Verdict support = Verdict::inconclusive;
  std::optional<Rational> support_violation;  // first exponent not a multiple of C/|g|
};

/// Leading term and support lattice of a series with a pole. g_order is |g|
/// and defaults to the exponent denominator of f. DomainError without a pole
/// or when C / |g| * |g| is not an integer.
LeadingBehavior leading_behavior(PuiseuxSeries const& f, std::int64_t N, std::optional<std::int64_t> g_order = {});

struct TrigTypeReport {
  /// pass: trigonometric type (within the window for truncated input);
  /// fail: not; inconclusive: the exponent -c is beyond the window.
  Verdict verdict = Verdict::inconclusive;
  Rational a;                  // tau -> a tau + b
  std::optional<Rational> b;   // unset when the leading coefficient is not a root of unity
  CycNum a0;
  CycNum zeta;                 // coefficient of q after the transform
  std::optional<Rational> first_violation;
  std::string detail;
};

/// Looks for tau -> a tau + b taking f to q^-1 + a_0 + zeta q with zeta a root
/// of unity or zero. a is forced by the leading exponent and e(c b) by the
/// leading coefficient.
TrigTypeReport trig_type_detect(PuiseuxSeries const& f);

}  // namespace moonshine
