#include "moonshine/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>

#include "moonshine/arith.hpp"
#include "moonshine/error.hpp"

namespace moonshine {

namespace {

using IntPoly = std::vector<std::int64_t>;

// Per-conductor tables: phi(L), the cyclotomic polynomial and the reduction
// of z^e for 0 <= e < L.
struct FieldTables {
  std::int64_t L = 1;
  std::size_t phi = 1;
  IntPoly cyclotomic;
  std::vector<IntPoly> power;  // power[e] has length phi
};

// Left inverse of the embedding Q(zeta_d) -> Q(zeta_L).
struct SubfieldTest {
  std::size_t rows = 0;  // phi(L)
  std::size_t cols = 0;  // phi(d)
  std::vector<std::int64_t> embed;  // rows x cols, row-major
  std::vector<Rational> left_inverse;  // cols x rows, row-major
};

std::mutex g_cache_mutex;
std::map<std::int64_t, std::unique_ptr<FieldTables>> g_fields;
std::map<std::pair<std::int64_t, std::int64_t>, std::unique_ptr<SubfieldTest>> g_subfields;
std::map<std::int64_t, IntPoly> g_cyclotomic_polys;

IntPoly cyclotomic_poly_locked(std::int64_t L) {
  if (auto it = g_cyclotomic_polys.find(L); it != g_cyclotomic_polys.end()) return it->second;
  // x^L - 1 divided by Phi_d for every proper divisor d.
  IntPoly num(static_cast<std::size_t>(L) + 1, 0);
  num[0] = -1;
  num[static_cast<std::size_t>(L)] = 1;
  for (auto d : divisors(L)) {
    if (d == L) continue;
    IntPoly den = cyclotomic_poly_locked(d);
    // den is monic; exact long division.
    std::size_t dn = den.size() - 1;
    IntPoly quot(num.size() - dn, 0);
    for (std::size_t i = num.size() - 1; i + 1 > dn; --i) {
      std::int64_t c = num[i];
      quot[i - dn] = c;
      if (c != 0)
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
      if (i == dn) break;
    }
    num = quot;
  }
  g_cyclotomic_polys[L] = num;
  return num;
}

FieldTables const& tables(std::int64_t L) {
  // Entries are never erased, so a per-thread pointer cache avoids the lock.
  thread_local std::map<std::int64_t, FieldTables const*> local;
  if (auto it = local.find(L); it != local.end()) return *it->second;
  std::lock_guard lock(g_cache_mutex);
  auto& slot = g_fields[L];
  if (!slot) {
    auto t = std::make_unique<FieldTables>();
    t->L = L;
    t->cyclotomic = cyclotomic_poly_locked(L);
    t->phi = t->cyclotomic.size() - 1;
    t->power.resize(static_cast<std::size_t>(L));
    IntPoly cur(t->phi, 0);
    cur[0] = 1;
    if (t->phi == 0) cur.assign(1, 1);
    for (std::int64_t e = 0; e < L; ++e) {
      t->power[static_cast<std::size_t>(e)] = cur;
      // multiply by z, reduce with the monic cyclotomic polynomial
      std::int64_t top = cur[t->phi - 1];
      for (std::size_t i = t->phi - 1; i > 0; --i) cur[i] = cur[i - 1];
      cur[0] = 0;
      if (t->phi == 1) cur[0] = 0;
      if (top != 0)
        for (std::size_t i = 0; i < t->phi; ++i) cur[i] -= top * t->cyclotomic[i];
    }
    slot = std::move(t);
  }
  local.emplace(L, slot.get());
  return *slot;
}

// Gaussian elimination: solves A x = b for square non-singular A (row-major n x n).
std::vector<Rational> solve_square(std::vector<Rational> a, std::vector<Rational> b, std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv * n + col] == 0) ++piv;
    if (piv == n) throw DomainError("singular linear system in cyclotomic field");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[col * n + j]);
      std::swap(b[piv], b[col]);
    }
    Rational inv = 1 / a[col * n + col];
    for (std::size_t j = col; j < n; ++j) a[col * n + j] *= inv;
    b[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r * n + col] == 0) continue;
      Rational f = a[r * n + col];
      for (std::size_t j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
      b[r] -= f * b[col];
    }
  }
  return b;
}

SubfieldTest const& subfield_test(std::int64_t d, std::int64_t L) {
  thread_local std::map<std::pair<std::int64_t, std::int64_t>, SubfieldTest const*> local;
  if (auto it = local.find({d, L}); it != local.end()) return *it->second;
  FieldTables const& big = tables(L);
  FieldTables const& small = tables(d);
  std::lock_guard lock(g_cache_mutex);
  auto& slot = g_subfields[{d, L}];
  if (!slot) {
    auto t = std::make_unique<SubfieldTest>();
    t->rows = big.phi;
    t->cols = small.phi;
    t->embed.assign(t->rows * t->cols, 0);
    for (std::size_t i = 0; i < t->cols; ++i) {
      auto const& col = big.power[static_cast<std::size_t>(
          mod_floor(static_cast<std::int64_t>(i) * (L / d), L))];
      for (std::size_t r = 0; r < t->rows; ++r) t->embed[r * t->cols + i] = col[r];
    }
    // left inverse (E^T E)^{-1} E^T, column by column of E^T
    std::size_t c = t->cols;
    std::vector<Rational> gram(c * c);
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        std::int64_t s = 0;
        for (std::size_t r = 0; r < t->rows; ++r) s += t->embed[r * c + i] * t->embed[r * c + j];
        gram[i * c + j] = s;
      }
    t->left_inverse.assign(c * t->rows, 0);
    for (std::size_t r = 0; r < t->rows; ++r) {
      std::vector<Rational> rhs(c);
      for (std::size_t i = 0; i < c; ++i) rhs[i] = t->embed[r * c + i];
      auto sol = solve_square(gram, rhs, c);
      for (std::size_t i = 0; i < c; ++i) t->left_inverse[i * t->rows + r] = sol[i];
    }
    slot = std::move(t);
  }
  local.emplace(std::make_pair(d, L), slot.get());
  return *slot;
}

// Reduce an arbitrary polynomial in z = e(1/L) into the power basis.
std::vector<Rational> reduce(std::int64_t L, std::vector<Rational> const& poly) {
  FieldTables const& t = tables(L);
  std::vector<Rational> out(t.phi, 0);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (poly[i] == 0) continue;
    if (i < t.phi) {
      out[i] += poly[i];
      continue;
    }
    auto const& row = t.power[i % static_cast<std::size_t>(L)];
    for (std::size_t j = 0; j < t.phi; ++j)
      if (row[j] != 0) out[j] += poly[i] * row[j];
  }
  return out;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

}  // namespace

CycNum::CycNum() : coeffs_{Rational(0)} {}

CycNum::CycNum(long value) : coeffs_{Rational(value)} {}

CycNum::CycNum(Rational value) : coeffs_{std::move(value)} { coeffs_[0].canonicalize(); }

CycNum::CycNum(std::int64_t L, std::vector<Rational> coeffs, bool reduced)
    : conductor_(L), coeffs_(std::move(coeffs)) {
  if (!reduced) coeffs_ = reduce(L, coeffs_);
  minimize_conductor();
}

CycNum CycNum::root(std::int64_t L, std::int64_t k) {
  if (L < 1) throw DomainError("root of unity needs a positive conductor");
  k = mod_floor(k, L);
  std::int64_t g = std::gcd(k, L);
  std::int64_t n = L / g;
  k /= g;
  thread_local std::map<std::pair<std::int64_t, std::int64_t>, CycNum> cache;
  auto it = cache.find({n, k});
  if (it != cache.end()) return it->second;
  std::vector<Rational> poly(static_cast<std::size_t>(k) + 1, 0);
  poly.back() = 1;
  CycNum r(n, std::move(poly), false);
  if (cache.size() < 100000) cache.emplace(std::make_pair(n, k), r);
  return r;
}

CycNum CycNum::from_power_basis(std::int64_t L, std::vector<Rational> coeffs) {
  if (L < 1) throw DomainError("conductor must be positive");
  if (coeffs.empty()) coeffs.emplace_back(0);
  return CycNum(L, std::move(coeffs), false);
}

bool CycNum::is_zero() const { return conductor_ == 1 && coeffs_[0] == 0; }

bool CycNum::is_one() const { return conductor_ == 1 && coeffs_[0] == 1; }

Rational const& CycNum::rational() const {
  if (conductor_ != 1) throw DomainError("cyclotomic number is not rational");
  return coeffs_[0];
}

void CycNum::minimize_conductor() {
  bool constant_only = true;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) {
      constant_only = false;
      break;
    }
  if (constant_only) {
    Rational c = coeffs_[0];
    coeffs_.assign(1, c);
    conductor_ = 1;
    return;
  }
  bool shrunk = true;
  while (shrunk && conductor_ > 1) {
    shrunk = false;
    for (auto p : prime_factors(conductor_)) {
      std::int64_t d = conductor_ / p;
      std::vector<Rational> c;
      bool member = true;
      if (d % p == 0) {
        // Phi_L(x) = Phi_d(x^p), so Q(zeta_d) is spanned by the powers z^(p i).
        for (std::size_t r = 0; r < coeffs_.size() && member; ++r)
          if (r % static_cast<std::size_t>(p) != 0 && coeffs_[r] != 0) member = false;
        if (member)
          for (std::size_t r = 0; r < coeffs_.size(); r += static_cast<std::size_t>(p)) c.push_back(coeffs_[r]);
      } else {
        SubfieldTest const& t = subfield_test(d, conductor_);
        c.assign(t.cols, 0);
        for (std::size_t i = 0; i < t.cols; ++i)
          for (std::size_t r = 0; r < t.rows; ++r)
            if (coeffs_[r] != 0 && t.left_inverse[i * t.rows + r] != 0)
              c[i] += t.left_inverse[i * t.rows + r] * coeffs_[r];
        for (std::size_t r = 0; r < t.rows && member; ++r) {
          Rational s = 0;
          for (std::size_t i = 0; i < t.cols; ++i)
            if (t.embed[r * t.cols + i] != 0) s += c[i] * t.embed[r * t.cols + i];
          member = (s == coeffs_[r]);
        }
      }
      if (member) {
        conductor_ = d;
        coeffs_ = std::move(c);
        shrunk = true;
        break;
      }
    }
  }
}

std::vector<Rational> CycNum::embed(std::int64_t L) const {
  if (L % conductor_ != 0) throw DomainError("embedding target must be a multiple of the conductor");
  if (L == conductor_) return coeffs_;
  std::int64_t step = L / conductor_;
  FieldTables const& t = tables(L);
  std::vector<Rational> out(t.phi, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    auto const& row = t.power[static_cast<std::size_t>(mod_floor(static_cast<std::int64_t>(i) * step, L))];
    for (std::size_t j = 0; j < t.phi; ++j)
      if (row[j] != 0) out[j] += coeffs_[i] * row[j];
  }
  return out;
}

void CycNum::lift_to_common(CycNum& a, CycNum& b) {
  if (a.conductor_ == b.conductor_) return;
  std::int64_t L = lcm64(a.conductor_, b.conductor_);
  a.coeffs_ = a.embed(L);
  a.conductor_ = L;
  b.coeffs_ = b.embed(L);
  b.conductor_ = L;
}

CycNum& CycNum::operator+=(CycNum const& o) {
  if (conductor_ == 1 && o.conductor_ == 1) {
    coeffs_[0] += o.coeffs_[0];
    return *this;
  }
  CycNum other = o;
  lift_to_common(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  minimize_conductor();
  return *this;
}

CycNum& CycNum::operator-=(CycNum const& o) {
  if (conductor_ == 1 && o.conductor_ == 1) {
    coeffs_[0] -= o.coeffs_[0];
    return *this;
  }
  return *this += -o;
}

CycNum CycNum::operator-() const {
  CycNum r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycNum& CycNum::operator*=(CycNum const& o) {
  if (o.conductor_ == 1) {
    if (o.coeffs_[0] == 0) return *this = CycNum();
    for (auto& c : coeffs_) c *= o.coeffs_[0];
    return *this;
  }
  if (conductor_ == 1) {
    Rational s = coeffs_[0];
    *this = o;
    if (s == 0) return *this = CycNum();
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  CycNum other = o;
  lift_to_common(*this, other);
  std::vector<Rational> prod(coeffs_.size() * 2 - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
      if (other.coeffs_[j] != 0) prod[i + j] += coeffs_[i] * other.coeffs_[j];
  }
  coeffs_ = reduce(conductor_, prod);
  minimize_conductor();
  return *this;
}

CycNum CycNum::inverse() const {
  if (is_zero()) throw DomainError("division by zero in cyclotomic field");
  if (conductor_ == 1) return CycNum(Rational(1 / coeffs_[0]));
  std::size_t n = coeffs_.size();
  // column j of the multiplication matrix is this * z^j
  std::vector<Rational> a(n * n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> shifted(n + j, 0);
    for (std::size_t i = 0; i < n; ++i) shifted[i + j] = coeffs_[i];
    auto col = reduce(conductor_, shifted);
    for (std::size_t r = 0; r < n; ++r) a[r * n + j] = col[r];
  }
  std::vector<Rational> e0(n, 0);
  e0[0] = 1;
  return CycNum(conductor_, solve_square(std::move(a), std::move(e0), n), true);
}

CycNum& CycNum::operator/=(CycNum const& o) {
  if (o.is_zero()) throw DomainError("division by zero in cyclotomic field");
  return *this *= o.inverse();
}

CycNum CycNum::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  CycNum result(1L);
  CycNum base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::complex<double> CycNum::to_complex() const {
  std::complex<double> s = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(conductor_);
    s += coeffs_[i].get_d() * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return s;
}

std::optional<RootOfUnity> CycNum::classify_root_of_unity(std::optional<std::int64_t> order_bound) const {
  if (is_zero()) return std::nullopt;
  std::int64_t n = lcm64(2, conductor_);
  if (!pow(n).is_one()) return std::nullopt;
  for (auto p : prime_factors(n))
    while (n % p == 0 && pow(n / p).is_one()) n /= p;
  if (order_bound && n > *order_bound) return std::nullopt;
  for (std::int64_t k = 0; k < n; ++k) {
    if (std::gcd(k, n) != 1) continue;
    if (root(n, k) == *this) return RootOfUnity{n, k};
  }
  return std::nullopt;  // unreachable for a genuine root of unity
}

std::string CycNum::to_text() const {
  std::ostringstream os;
  os << "L=" << conductor_;
  for (auto const& c : coeffs_) os << ' ' << c.get_str();
  return os.str();
}

std::string CycNum::to_string() const {
  if (conductor_ == 1) return coeffs_[0].get_str();
  return to_text();
}

CycNum CycNum::parse(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string tok;
  if (!(is >> tok)) throw DomainError("empty cyclotomic number");
  auto parse_rational = [](std::string const& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw DomainError("bad rational '" + s + "'");
    if (r.get_den() == 0) throw DomainError("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
  };
  if (tok.rfind("L=", 0) == 0) {
    std::int64_t L = 0;
    try {
      L = std::stoll(tok.substr(2));
    } catch (...) {
      throw DomainError("bad conductor in '" + tok + "'");
    }
    if (L < 1) throw DomainError("conductor must be positive");
    std::vector<Rational> coeffs;
    while (is >> tok) coeffs.push_back(parse_rational(tok));
    if (static_cast<std::int64_t>(coeffs.size()) != euler_phi(L))
      throw DomainError("expected " + std::to_string(euler_phi(L)) + " coefficients for L=" + std::to_string(L));
    return from_power_basis(L, std::move(coeffs));
  }
  CycNum r(parse_rational(tok));
  if (is >> tok) throw DomainError("trailing text after rational '" + tok + "'");
  return r;
}

std::ostream& operator<<(std::ostream& os, CycNum const& c) { return os << c.to_string(); }

}  // namespace moonshine
