#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <unordered_set>
#include <vector>

#include "maxcurves/diophantine.hpp"
#include "maxcurves/exact_arith.hpp"

namespace maxcurves {

struct SearchConfig {
  std::int64_t q_min = 2;
  std::int64_t q_max = 2;
  bool include_supersingular = false;
  std::uint64_t n_floor = 2;  // report n >= n_floor
  unsigned parallelism = 1;
  bool verify = true;  // re-run is_maximal on every emitted triple

  // Throws std::invalid_argument unless 2 <= q_min <= q_max and n_floor >= 1.
  void validate() const;
};

// Decides maximality at degree n for one ordinary pair: the cheap necessary
// condition first, a refined angle when that is inconclusive at large n,
// and the exact test last.
class SolutionTester {
 public:
  SolutionTester(const TracePair& pair, AngleApprox base);

  bool operator()(std::uint64_t n);

  const TracePair& pair() const noexcept { return pair_; }
  const AngleApprox& angle() const noexcept { return base_; }
  std::uint64_t exact_checks() const noexcept { return exact_checks_; }

 private:
  TracePair pair_;
  AngleApprox base_;
  std::optional<AngleApprox> refined_;
  std::uint64_t exact_checks_ = 0;
};

// Every n > 1 (all n >= n_floor) with -a_n = floor(2 sqrt(q)^n), mapped to how
// it was found. Throws WrongClassification for supersingular pairs.
std::map<std::uint64_t, Source> ordinary_solutions(const TracePair& pair,
                                                   std::uint64_t n_floor = 2);

// Sorted degrees from ordinary_solutions.
std::vector<std::uint64_t> ordinary_degrees(const TracePair& pair);

// If n is a solution, records it (when n >= n_floor) and recurses on p n
// for every odd prime p <= N / n. `visited` suppresses repeated subtrees.
void convergents_to_solutions(SolutionTester& tester, std::uint64_t N, std::uint64_t n,
                              std::uint64_t n_floor, std::map<std::uint64_t, Source>& found,
                              std::unordered_set<std::uint64_t>& visited);

// Triples for every prime power q in [q_min, q_max], ordered by (q, a1, n).
// The sink is called from the calling thread only, in order.
void enumerate_triples(const SearchConfig& cfg,
                       const std::function<void(const MaximalTriple&)>& sink);

std::vector<MaximalTriple> enumerate_triples(const SearchConfig& cfg);

// All triples for a single q, in order; the per-q kernel of enumerate_triples.
// Empty unless q is a prime power.
std::vector<MaximalTriple> triples_for_q(std::int64_t q, const SearchConfig& cfg);

namespace reference {

// Serial brute force: every n in [n_lo, n_hi] with -a_n = floor(2 sqrt(q)^n),
// from an incremental recurrence and a squared comparison. Independent of
// the convergent pipeline; kept for tests and benchmarks.
std::vector<std::uint64_t> brute_force_degrees(const TracePair& pair, std::uint64_t n_lo,
                                               std::uint64_t n_hi);

}  // namespace reference

}  // namespace maxcurves
