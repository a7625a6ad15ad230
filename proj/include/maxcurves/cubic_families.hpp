#pragma once

// Degree-3 maximality: which traces can work, a sufficient condition for
// q = a1^2 + b, and the primes p = a^2 + c^2 with small c that feed it.

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "maxcurves/exact_arith.hpp"

namespace maxcurves {

// {-floor(2 sqrt q), nearest integer to sqrt q}; for q >= 3 only these a1
// can satisfy -a_3 = floor(2 sqrt(q)^3). Throws std::invalid_argument for q < 3.
std::vector<std::int64_t> cubic_candidates(std::int64_t q);

// is_maximal(q, -floor(2 sqrt q), 3). True only for square q.
bool square_exclusion_check(std::int64_t q);

// Optional widened constraint b^2 <= (4/3) a1 / (1 + epsilon). The widened
// form has no stated lower bound on a1, so a qualifying pair that fails the
// exact test is simply rejected rather than treated as an error.
struct SoomroRelaxation {
  mpq_class epsilon;  // 0 < epsilon <= 1/3
};

// If b^2 <= a1, returns (a1^2 + b, a1, 3), which is maximal; otherwise none.
// Requires a1 >= 2. Throws InvariantViolation if a qualifying pair fails
// the exact test.
std::optional<MaximalTriple> soomro_test(std::int64_t a1, std::int64_t b,
                                         const std::optional<SoomroRelaxation>& relaxed = {});

// Every Soomro triple with 2 <= a1 <= a_max, ordered by (a1, b).
std::vector<MaximalTriple> soomro_family(std::int64_t a_max, unsigned parallelism = 1);

struct SectorPrime {
  std::uint64_t p = 0;
  std::uint64_t a = 0;
  std::uint64_t c = 0;
  bool s3 = false;  // c^4 <= a
  bool s4 = false;  // c < p^theta
  bool s5 = false;  // s4 and a >= p^(4 theta)
  bool s6 = false;  // s4 and a < p^(4 theta)

  friend bool operator==(const SectorPrime&, const SectorPrime&) = default;
};

// Primes p = a^2 + c^2 with 0 < a <= a_max, lying in S_3 (c^4 <= a) or in
// S_4(theta) (c < p^theta), ordered by (a, c). All membership tests are
// exact integer comparisons. Requires a_max >= 1 and 0 < theta < 1/8.
std::vector<SectorPrime> sector_enumerate(std::uint64_t a_max, const mpq_class& theta,
                                          unsigned parallelism = 1);

// Default sector exponent.
inline mpq_class default_theta() { return mpq_class(119, 1000); }

// (p, a, 3) for every S_3 prime with a <= a_max; each verified exactly.
std::vector<MaximalTriple> cubic_prime_family(std::uint64_t a_max, unsigned parallelism = 1);

}  // namespace maxcurves
