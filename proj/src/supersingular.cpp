#include "maxcurves/supersingular.hpp"

#include <algorithm>
#include <optional>

namespace maxcurves {

std::uint64_t DegreeProgression::first_at_least(std::uint64_t floor) const {
  std::optional<std::uint64_t> best;
  for (std::uint64_t n : sporadic) {
    if (n >= floor) {
      best = n;
      break;
    }
  }
  if (!empty) {
    const std::uint64_t steps = floor <= offset ? 0 : (floor - offset + modulus - 1) / modulus;
    const std::uint64_t n = offset + steps * modulus;
    if (!best || n < *best) best = n;
  }
  if (!best) throw std::logic_error("degree set has no member at or above the floor");
  return *best;
}

std::vector<std::uint64_t> DegreeProgression::first(std::size_t count) const {
  std::vector<std::uint64_t> out;
  std::size_t s = 0;
  std::uint64_t next = offset;
  while (out.size() < count) {
    const bool have_s = s < sporadic.size();
    if (empty && !have_s) break;
    if (have_s && (empty || sporadic[s] < next)) {
      out.push_back(sporadic[s++]);
    } else {
      out.push_back(next);
      next += modulus;
    }
  }
  return out;
}

DegreeProgression supersingular_degrees(const TracePair& pair) {
  const Classification c = classify(pair);
  if (!c.supersingular()) {
    throw WrongClassification("supersingular_degrees called on an ordinary pair");
  }
  const unsigned order = *c.order;
  // beta^n = -1 has a solution iff ord(beta) is even, and then exactly the
  // n congruent to ord/2 modulo ord.
  DegreeProgression out;
  if (order % 2 == 0) out = DegreeProgression{order / 2, order, false, {}};
  // Sporadic degrees need q^n <= 13.
  std::int64_t qn = pair.q();
  for (std::uint64_t n = 1; qn <= 13; ++n, qn *= pair.q()) {
    if (!out.in_progression(n) && is_maximal(pair, n)) out.sporadic.push_back(n);
  }
  return out;
}

std::vector<std::int64_t> supersingular_traces(std::int64_t q) {
  std::vector<std::int64_t> out;
  for (std::int64_t k : {0, 1, 2, 3, 4}) {
    const std::int64_t target = k * q;
    if (!is_perfect_square(target)) continue;
    const auto r = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(target)));
    out.push_back(r);
    if (r != 0) out.push_back(-r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace maxcurves
