#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace hzeta {

// Eratosthenes sieve; returns all primes <= n in ascending order.
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

// Deterministic Miller-Rabin, valid for all 64-bit n.
bool is_prime(std::uint64_t n);

// Trial division (ascending primes), so factors come out sorted.
// Returns (p, e) pairs with p^e || n.  n = 0 is a domain error.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

// Smallest-prime-factor table for 0..n; spf[0] = spf[1] = 0.
std::vector<std::uint32_t> spf_table(std::uint32_t n);

std::uint64_t euler_phi(std::uint64_t n);

// n = p^m with m >= 1?  Fills p and m on success.
bool prime_power(std::uint64_t n, std::uint64_t& p, int& m);

}  // namespace hzeta
