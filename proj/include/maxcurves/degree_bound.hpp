#pragma once

// Explicit degree bound from a linear-forms-in-two-logarithms estimate.
//
//   f(q, n) = n/4 log q - 8.87 (10.98 pi + 1/2 log q) (2 log n + 3.27)^2 - log(pi/3)
//
// For every ordinary pair over F_q, any maximal degree n satisfies n < N_q,
// where N_q is the unique zero of f(q, .) above 8007.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace maxcurves {

class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A certified enclosure of f(q, n): the true value lies within error_bound
// of the decimal `digits`. approx is the nearest double, for display.
struct BoundValue {
  double approx = 0.0;
  double error_bound = 0.0;
  int sign = 0;  // certified sign, or 0 if the enclosure contains zero
  std::string digits;  // midpoint, >= 30 significant digits
  unsigned precision_bits = 0;
};

// Evaluates f with interval rounding at `precision_bits` (>= 100).
// Throws std::invalid_argument for q < 2 or n < 1.
BoundValue bound_fn(std::int64_t q, double n, unsigned precision_bits = 128);

struct DegreeBound {
  std::int64_t q = 0;
  std::uint64_t n_max = 0;  // ceil(N_q): every maximal degree is <= n_max
  std::pair<double, double> bracket;  // f(lo) < 0 < f(hi), hi - lo < 1
};

// Root bracketing by doubling then bisection; each sign used is certified,
// raising precision when needed. Throws PrecisionExhausted if no sign can
// be certified at the maximum working precision.
DegreeBound max_degree(std::int64_t q);

// Memoized max_degree; safe to call from several threads.
const DegreeBound& cached_max_degree(std::int64_t q);

}  // namespace maxcurves
