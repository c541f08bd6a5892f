#include "moonshine/polynomial.hpp"

#include <cctype>
#include <sstream>

#include "moonshine/error.hpp"

namespace moonshine {

Polynomial::Polynomial(std::vector<CycNum> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(std::size_t degree, CycNum c) {
  std::vector<CycNum> v(degree + 1);
  v[degree] = std::move(c);
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

CycNum Polynomial::operator()(CycNum const& x) const {
  CycNum acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

PuiseuxSeries Polynomial::operator()(PuiseuxSeries const& x) const {
  PuiseuxSeries acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + PuiseuxSeries::constant(*it);
  return acc;
}

std::string Polynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    CycNum const& c = coeffs_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    std::string coef;
    bool negative = false;
    if (c.is_rational()) {
      negative = c.rational() < 0;
      coef = Rational(abs(c.rational())).get_str();
    } else {
      coef = "[" + c.to_text() + "]";
    }
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    if (i == 0) {
      os << coef;
    } else {
      if (coef != "1") os << coef << "*";
      os << "x";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

Polynomial Polynomial::parse(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](std::string const& msg) -> ParseError { return ParseError(msg, 1, pos + 1); };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  std::vector<CycNum> coeffs;
  auto add = [&](std::size_t deg, CycNum const& c) {
    if (coeffs.size() <= deg) coeffs.resize(deg + 1);
    coeffs[deg] += c;
  };
  skip_ws();
  if (text.substr(pos) == "0") return Polynomial();
  bool first = true;
  while (true) {
    skip_ws();
    if (pos >= text.size()) {
      if (first) throw fail("empty polynomial");
      break;
    }
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
      negative = text[pos] == '-';
      ++pos;
      skip_ws();
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    std::optional<CycNum> coef;
    if (pos < text.size() && text[pos] == '[') {
      std::size_t close = text.find(']', pos);
      if (close == std::string_view::npos) throw fail("unterminated '['");
      try {
        coef = CycNum::parse(text.substr(pos + 1, close - pos - 1));
      } catch (DomainError const& e) {
        throw fail(e.what());
      }
      pos = close + 1;
    } else if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      std::size_t start = pos;
      while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
      try {
        coef = CycNum::parse(text.substr(start, pos - start));
      } catch (DomainError const& e) {
        pos = start;
        throw fail(e.what());
      }
    }
    skip_ws();
    bool star = false;
    if (coef && pos < text.size() && text[pos] == '*') {
      star = true;
      ++pos;
      skip_ws();
    }
    std::size_t deg = 0;
    if (pos < text.size() && text[pos] == 'x') {
      ++pos;
      deg = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw fail("expected exponent");
        deg = std::stoul(std::string(text.substr(start, pos - start)));
      }
    } else if (star || !coef) {
      throw fail("expected 'x'");
    }
    CycNum c = coef.value_or(CycNum(1L));
    add(deg, negative ? -c : c);
    first = false;
  }
  return Polynomial(std::move(coeffs));
}

BivariatePolynomial::BivariatePolynomial(Terms terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](auto const& t) { return t.second.is_zero(); });
}

int BivariatePolynomial::y_degree() const {
  int d = -1;
  for (auto const& [k, c] : terms_) d = std::max(d, k.first);
  return d;
}

int BivariatePolynomial::x_degree() const {
  int d = -1;
  for (auto const& [k, c] : terms_) d = std::max(d, k.second);
  return d;
}

CycNum BivariatePolynomial::coefficient(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? CycNum() : it->second;
}

PuiseuxSeries BivariatePolynomial::operator()(PuiseuxSeries const& y, PuiseuxSeries const& x) const {
  int dy = y_degree();
  int dx = x_degree();
  if (dy < 0) return PuiseuxSeries::zero();
  std::vector<PuiseuxSeries> ypow{PuiseuxSeries::constant(CycNum(1L))};
  for (int i = 1; i <= dy; ++i) ypow.push_back(ypow.back() * y);
  // Horner in x over coefficient series in y.
  PuiseuxSeries acc;
  for (int j = dx; j >= 0; --j) {
    PuiseuxSeries cj;
    for (int i = 0; i <= dy; ++i) {
      auto it = terms_.find({i, j});
      if (it != terms_.end()) cj += ypow[static_cast<std::size_t>(i)] * it->second;
    }
    acc = acc * x + cj;
  }
  return acc;
}

std::string BivariatePolynomial::to_text() const {
  std::ostringstream os;
  for (auto const& [k, c] : terms_) os << k.first << ' ' << k.second << ' ' << c.to_string() << '\n';
  return os.str();
}

BivariatePolynomial BivariatePolynomial::parse(std::string_view text) {
  Terms terms;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    std::istringstream ls(line);
    int i = 0;
    int j = 0;
    if (!(ls >> i >> j) || i < 0 || j < 0) throw ParseError("expected two non-negative degrees", lineno);
    std::string rest;
    std::getline(ls, rest);
    try {
      CycNum c = CycNum::parse(rest);
      if (!terms.emplace(std::make_pair(i, j), c).second) throw ParseError("duplicate term", lineno);
    } catch (DomainError const& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return BivariatePolynomial(std::move(terms));
}

}  // namespace moonshine
