#include "hzeta/primes.hpp"

#include <cmath>
#include <stdexcept>

namespace hzeta {

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  std::vector<bool> comp(n + 1, false);
  for (std::uint64_t i = 2; i * i <= n; ++i)
    if (!comp[i])
      for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
  for (std::uint64_t i = 2; i <= n; ++i)
    if (!comp[i]) out.push_back(i);
  return out;
}

static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return (std::uint64_t)((__uint128_t)a * b % m);
}

static std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  // This base set is deterministic for all n < 2^64 (Sorenson-Webster).
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  if (n == 0) throw std::domain_error("factorize: n = 0");
  std::vector<std::pair<std::uint64_t, int>> out;
  if (n == 1) return out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      out.push_back({p, e});
      if (n > 1 && is_prime(n)) break;  // cofactor is prime, stop dividing
    }
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::vector<std::uint32_t> spf_table(std::uint32_t n) {
  std::vector<std::uint32_t> spf(n + 1, 0);
  for (std::uint32_t i = 2; i <= n; ++i) {
    if (spf[i] == 0) {
      for (std::uint64_t j = i; j <= n; j += i)
        if (spf[j] == 0) spf[j] = i;
    }
  }
  return spf;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = n;
  for (auto [p, e] : factorize(n)) {
    (void)e;
    phi -= phi / p;
  }
  return phi;
}

bool prime_power(std::uint64_t n, std::uint64_t& p, int& m) {
  if (n < 2) return false;
  auto f = factorize(n);
  if (f.size() != 1) return false;
  p = f[0].first;
  m = f[0].second;
  return true;
}

}  // namespace hzeta
