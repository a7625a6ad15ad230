#pragma once

// Exact integer arithmetic on Frobenius trace pairs (q, a1).
//
// Everything in here is exact: traces are arbitrary-precision integers and
// the maximality test never touches floating point.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace maxcurves {

using BigInt = mpz_class;

// Raised when an internal guarantee fails (for instance a proven identity
// that does not hold on a concrete input). Never expected in practice.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A pair (q, a1) with q >= 2 and a1^2 <= 4q.
class TracePair {
 public:
  // Throws std::invalid_argument if q < 2 or a1^2 > 4q.
  TracePair(std::int64_t q, std::int64_t a1);

  std::int64_t q() const noexcept { return q_; }
  std::int64_t a1() const noexcept { return a1_; }

  friend auto operator<=>(const TracePair&, const TracePair&) = default;

 private:
  std::int64_t q_;
  std::int64_t a1_;
};

// True iff a1^2 <= 4q and q >= 2, without overflow.
bool is_valid_pair(std::int64_t q, std::int64_t a1) noexcept;

// floor(sqrt(n)). Throws std::invalid_argument for negative n.
BigInt isqrt(const BigInt& n);
std::uint64_t isqrt(std::uint64_t n) noexcept;

bool is_perfect_square(std::int64_t n) noexcept;

// a_n with a_0 = 2, a_1 = a1 and a_{k+1} = a1 a_k - q a_{k-1}.
BigInt trace(const TracePair& pair, std::uint64_t n);

// -a_n == floor(2 sqrt(q)^n), i.e. floor(sqrt(4 q^n)). Requires n >= 1.
bool is_maximal(const TracePair& pair, std::uint64_t n);

enum class Kind { Ordinary, Supersingular };

// Supersingular pairs carry the multiplicative order of beta = alpha/sqrt(q),
// one of 1, 2, 3, 4, 6, 8, 12.
struct Classification {
  Kind kind = Kind::Ordinary;
  std::optional<unsigned> order;

  bool supersingular() const noexcept { return kind == Kind::Supersingular; }
  friend bool operator==(const Classification&, const Classification&) = default;
};

Classification classify(const TracePair& pair);

std::string to_string(const Classification& c);

enum class Source { OrdinarySearch, SupersingularProgression, DirectCheck, CubicFamily };

std::string to_string(Source s);
std::optional<Source> parse_source(const std::string& s);

struct MaximalTriple {
  std::int64_t q = 0;
  std::int64_t a1 = 0;
  std::uint64_t n = 0;
  Source source = Source::OrdinarySearch;

  friend bool operator==(const MaximalTriple&, const MaximalTriple&) = default;
};

// Orders by (q, a1, n).
inline bool triple_less(const MaximalTriple& a, const MaximalTriple& b) noexcept {
  if (a.q != b.q) return a.q < b.q;
  if (a.a1 != b.a1) return a.a1 < b.a1;
  return a.n < b.n;
}

}  // namespace maxcurves
