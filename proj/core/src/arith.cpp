#include "moonshine/arith.hpp"

#include <algorithm>

namespace moonshine {

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (auto p : prime_factors(n)) r = r / p * (p - 1);
  return r;
}

std::int64_t divisor_sigma(std::int64_t n, int k) {
  std::int64_t s = 0;
  for (auto d : divisors(n)) {
    std::int64_t t = 1;
    for (int i = 0; i < k; ++i) t *= d;
    s += t;
  }
  return s;
}

}  // namespace moonshine
