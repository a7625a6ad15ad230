#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "maxcurves/exact_arith.hpp"

namespace maxcurves {

class WrongClassification : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The odd multiples of `offset`, i.e. n = offset (mod 2 offset), or nothing,
// plus a few sporadic small degrees. beta^n = -1 is sufficient for maximality
// but not necessary: when beta^n is another root of unity close to -1 and
// q^n is tiny, |beta^n + 1| < q^(-n/4) still holds. Since |beta^n + 1| >=
// 2 cos(5 pi / 12) > 13^(-1/4) otherwise, this needs q^n <= 13; the cases
// are (2, -2, 1), (3, -3, 1) and (12, -6, 1).
struct DegreeProgression {
  std::uint64_t offset = 0;
  std::uint64_t modulus = 0;
  bool empty = true;  // no n with beta^n = -1
  std::vector<std::uint64_t> sporadic;  // ascending, outside the progression

  bool in_progression(std::uint64_t n) const noexcept {
    return !empty && n % modulus == offset;
  }
  bool contains(std::uint64_t n) const noexcept {
    return in_progression(n) ||
           std::find(sporadic.begin(), sporadic.end(), n) != sporadic.end();
  }
  // Smallest member >= floor. Throws std::logic_error when there is none.
  std::uint64_t first_at_least(std::uint64_t floor) const;
  // The first `count` members, ascending (fewer if the set is finite).
  std::vector<std::uint64_t> first(std::size_t count) const;

  friend bool operator==(const DegreeProgression&, const DegreeProgression&) = default;
};

// All n with -a_n = floor(2 sqrt(q)^n): the n with beta^n = -1 and the
// sporadic ones. Throws WrongClassification for ordinary pairs.
DegreeProgression supersingular_degrees(const TracePair& pair);

// Every integer a1 with a1^2 in {0, q, 2q, 3q, 4q}, ascending.
std::vector<std::int64_t> supersingular_traces(std::int64_t q);

}  // namespace maxcurves
