#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace ezeta {

// Sieve of Eratosthenes over odd numbers.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  out.push_back(2);
  const std::uint64_t half = (limit - 1) / 2;  // index j represents 2j+1, j >= 1
  std::vector<bool> composite(half + 1, false);
  for (std::uint64_t j = 1; j <= half; ++j) {
    if (composite[j]) continue;
    const std::uint64_t p = 2 * j + 1;
    out.push_back(p);
    for (std::uint64_t m = p * p; m <= limit; m += 2 * p) composite[(m - 1) / 2] = true;
  }
  return out;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

using Factorization = std::vector<std::pair<std::uint64_t, unsigned>>;

// Trial division by sieved primes up to sqrt(n).
inline Factorization factorize(std::uint64_t n) {
  Factorization out;
  if (n <= 1) return out;
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n))) + 1;
  for (std::uint64_t p : primes_up_to(root)) {
    if (p * p > n) break;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1u);
  return out;
}

// Smallest prime factor of every n <= limit (spf[0] = spf[1] = 0).
inline std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit) {
  std::vector<std::uint32_t> spf(static_cast<std::size_t>(limit) + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf[i]) continue;
    for (std::uint64_t m = i; m <= limit; m += i)
      if (!spf[m]) spf[m] = static_cast<std::uint32_t>(i);
  }
  return spf;
}

// |mu(n)| for n <= limit.
inline std::vector<std::uint8_t> squarefree_indicator(std::uint64_t limit) {
  std::vector<std::uint8_t> sf(limit + 1, 1);
  sf[0] = 0;
  for (std::uint64_t p : primes_up_to(static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1)) {
    const std::uint64_t q = p * p;
    for (std::uint64_t m = q; m <= limit; m += q) sf[m] = 0;
  }
  return sf;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// 1-based position of the prime p among all primes (p_1 = 2).
inline std::uint64_t prime_index(std::uint64_t p) {
  const auto ps = primes_up_to(p);
  return static_cast<std::uint64_t>(std::upper_bound(ps.begin(), ps.end(), p) - ps.begin());
}

}  // namespace ezeta
