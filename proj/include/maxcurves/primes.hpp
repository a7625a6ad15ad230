#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace maxcurves {

// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(std::uint64_t n) noexcept;

// (p, k) with q = p^k, or nullopt when q is not a prime power (q < 2 included).
std::optional<std::pair<std::uint64_t, unsigned>> prime_power_decomposition(std::uint64_t q);

inline bool is_prime_power(std::uint64_t q) {
  return prime_power_decomposition(q).has_value();
}

// Ascending prime powers in [lo, hi].
std::vector<std::uint64_t> prime_powers_in(std::uint64_t lo, std::uint64_t hi);

// Sieve of Eratosthenes; all primes <= limit, ascending.
std::vector<std::uint32_t> sieve_primes(std::uint32_t limit);

// Odd primes p <= limit from a shared, lazily grown table. The returned span
// stays valid for the life of the process.
std::span<const std::uint32_t> odd_primes_up_to(std::uint64_t limit);

}  // namespace maxcurves
