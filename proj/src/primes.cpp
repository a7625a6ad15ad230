#include "maxcurves/primes.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace maxcurves {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  const int s = std::countr_zero(n - 1);
  const std::uint64_t d = (n - 1) >> s;
  // Sinclair's seven bases are deterministic below 2^64.
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL,
                          1795265022ULL}) {
    const std::uint64_t base = a % n;
    if (base == 0) continue;
    std::uint64_t x = pow_mod(base, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power_decomposition(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  if (is_prime(q)) return std::pair{q, 1U};

  // A proper prime power p^k (k >= 2) has p <= sqrt(q); trial-divide for it.
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; d += (d == 2 ? 1 : 2)) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return std::nullopt;
  unsigned k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  if (q != 1) return std::nullopt;
  return std::pair{p, k};
}

std::vector<std::uint64_t> prime_powers_in(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = std::max<std::uint64_t>(lo, 2); q <= hi; ++q) {
    if (is_prime_power(q)) out.push_back(q);
    if (q == UINT64_MAX) break;
  }
  return out;
}

std::vector<std::uint32_t> sieve_primes(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

std::span<const std::uint32_t> odd_primes_up_to(std::uint64_t limit) {
  if (limit > UINT32_MAX) throw std::out_of_range("prime table limited to 32-bit primes");
  static std::shared_mutex mutex;
  // Each table is kept alive so spans handed out earlier stay valid.
  static std::deque<std::vector<std::uint32_t>> tables;
  static std::uint64_t covered = 0;

  auto slice = [limit](const std::vector<std::uint32_t>& table) {
    auto end = std::upper_bound(table.begin(), table.end(), static_cast<std::uint32_t>(limit));
    auto begin = table.begin();
    if (begin != end && *begin == 2) ++begin;
    return std::span<const std::uint32_t>(begin, end);
  };
  {
    std::shared_lock lock(mutex);
    if (limit <= covered) return slice(tables.back());
  }
  std::unique_lock lock(mutex);
  if (limit > covered) {
    const std::uint64_t target = std::max<std::uint64_t>(limit, std::max<std::uint64_t>(2 * covered, 1U << 21));
    const auto capped = static_cast<std::uint32_t>(std::min<std::uint64_t>(target, UINT32_MAX));
    tables.push_back(sieve_primes(capped));
    covered = capped;
  }
  return slice(tables.back());
}

}  // namespace maxcurves
