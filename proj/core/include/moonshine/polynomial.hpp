#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "moonshine/cyclotomic.hpp"
#include "moonshine/qseries.hpp"

namespace moonshine {

/// Univariate polynomial with cyclotomic coefficients; coeffs[i] multiplies x^i.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<CycNum> coeffs);

  static Polynomial monomial(std::size_t degree, CycNum c = CycNum(1L));

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::vector<CycNum> const& coeffs() const { return coeffs_; }
  CycNum coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : CycNum(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back().is_one(); }

  CycNum operator()(CycNum const& x) const;
  PuiseuxSeries operator()(PuiseuxSeries const& x) const;

  friend bool operator==(Polynomial const&, Polynomial const&) = default;

  /// "x^2 - 393768"; non-rational coefficients are bracketed, "[L=4 0 1]*x".
  std::string to_string() const;
  static Polynomial parse(std::string_view text);

 private:
  void trim();
  std::vector<CycNum> coeffs_;
};

/// Polynomial in y and x; key (i, j) multiplies y^i x^j.
class BivariatePolynomial {
 public:
  using Terms = std::map<std::pair<int, int>, CycNum>;

  BivariatePolynomial() = default;
  explicit BivariatePolynomial(Terms terms);

  Terms const& terms() const { return terms_; }
  int y_degree() const;
  int x_degree() const;
  CycNum coefficient(int i, int j) const;

  PuiseuxSeries operator()(PuiseuxSeries const& y, PuiseuxSeries const& x) const;

  friend bool operator==(BivariatePolynomial const&, BivariatePolynomial const&) = default;

  /// One line "i j <cycnum>" per nonzero term, in key order.
  std::string to_text() const;
  static BivariatePolynomial parse(std::string_view text);

 private:
  Terms terms_;
};

}  // namespace moonshine
