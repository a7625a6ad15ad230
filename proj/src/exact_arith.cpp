#include "maxcurves/exact_arith.hpp"

#include <array>
#include <cmath>

namespace maxcurves {

bool is_valid_pair(std::int64_t q, std::int64_t a1) noexcept {
  if (q < 2) return false;
  const __int128 sq = static_cast<__int128>(a1) * a1;
  return sq <= static_cast<__int128>(q) * 4;
}

TracePair::TracePair(std::int64_t q, std::int64_t a1) : q_(q), a1_(a1) {
  if (q < 2) throw std::invalid_argument("trace pair requires q >= 2");
  if (!is_valid_pair(q, a1)) {
    throw std::invalid_argument("trace pair violates a1^2 <= 4q");
  }
}

BigInt isqrt(const BigInt& n) {
  if (sgn(n) < 0) throw std::invalid_argument("isqrt of a negative number");
  if (sgn(n) == 0) return 0;

  // Newton from above: x_0 = 2^ceil(bits/2) >= sqrt(n); the iterates
  // decrease strictly until they reach floor(sqrt(n)).
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  BigInt x = 1;
  x <<= (bits + 1) / 2;
  for (;;) {
    BigInt y = (x + n / x) >> 1;
    if (y >= x) break;
    x = std::move(y);
  }
  // Correction; a no-op when the iteration above is right.
  while (x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

std::uint64_t isqrt(std::uint64_t n) noexcept {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_perfect_square(std::int64_t n) noexcept {
  if (n < 0) return false;
  const std::uint64_t r = isqrt(static_cast<std::uint64_t>(n));
  return r * r == static_cast<std::uint64_t>(n);
}

BigInt trace(const TracePair& pair, std::uint64_t n) {
  if (n == 0) return 2;
  const BigInt a1 = static_cast<long>(pair.a1());
  const BigInt q = static_cast<long>(pair.q());
  BigInt prev = 2;
  BigInt cur = a1;
  BigInt next;
  for (std::uint64_t k = 1; k < n; ++k) {
    next = a1 * cur - q * prev;
    prev.swap(cur);
    cur.swap(next);
  }
  return cur;
}

bool is_maximal(const TracePair& pair, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("is_maximal requires n >= 1");
  const BigInt an = trace(pair, n);
  // -a_n = isqrt(4 q^n)  <=>  a_n <= 0  and  a_n^2 <= 4 q^n < (1 - a_n)^2.
  if (sgn(an) > 0) return false;
  BigInt bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), static_cast<unsigned long>(pair.q()), n);
  bound <<= 2;
  if (an * an > bound) return false;
  const BigInt next = 1 - an;
  return bound < next * next;
}

Classification classify(const TracePair& pair) {
  const __int128 q = pair.q();
  const __int128 sq = static_cast<__int128>(pair.a1()) * pair.a1();
  const bool positive = pair.a1() > 0;
  Classification c;
  if (sq == 4 * q) {
    c.order = positive ? 1U : 2U;
  } else if (sq == 0) {
    c.order = 4U;
  } else if (sq == q) {
    c.order = positive ? 6U : 3U;
  } else if (sq == 2 * q) {
    c.order = 8U;
  } else if (sq == 3 * q) {
    c.order = 12U;
  }
  if (c.order) c.kind = Kind::Supersingular;
  return c;
}

std::string to_string(const Classification& c) {
  if (!c.supersingular()) return "Ordinary";
  return "Supersingular order " + std::to_string(*c.order);
}

namespace {
constexpr std::array<std::pair<Source, const char*>, 4> kSourceNames{{
    {Source::OrdinarySearch, "ordinary_search"},
    {Source::SupersingularProgression, "supersingular_progression"},
    {Source::DirectCheck, "direct_check"},
    {Source::CubicFamily, "cubic_family"},
}};
}  // namespace

std::string to_string(Source s) {
  for (const auto& [src, name] : kSourceNames) {
    if (src == s) return name;
  }
  return "unknown";
}

std::optional<Source> parse_source(const std::string& s) {
  for (const auto& [src, name] : kSourceNames) {
    if (s == name) return src;
  }
  return std::nullopt;
}

}  // namespace maxcurves
