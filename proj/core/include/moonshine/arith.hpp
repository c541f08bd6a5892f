#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace moonshine {

// Small integer helpers shared by the modules.

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

/// floor(a / b) for b > 0.
inline std::int64_t div_floor(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

/// ceil(a / b) for b > 0.
inline std::int64_t div_ceil(std::int64_t a, std::int64_t b) { return -div_floor(-a, b); }

std::vector<std::int64_t> divisors(std::int64_t n);
std::vector<std::int64_t> prime_factors(std::int64_t n);  // distinct, ascending
bool is_prime(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);
std::int64_t divisor_sigma(std::int64_t n, int k = 1);

}  // namespace moonshine
