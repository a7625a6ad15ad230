#pragma once

// Diophantine side of the search. With a1 = 2 sqrt(q) cos(theta),
// theta in [0, pi], every odd maximal degree n >= 3 (n >= 13 when q = 2)
// up to a cap N shows up as the denominator of an odd/odd convergent of any
// x close enough to theta/pi; `required_eps` gives "close enough".

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "maxcurves/exact_arith.hpp"

namespace maxcurves {

class InsufficientPrecision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rational x with |x - theta/pi| <= eps, certified.
struct AngleApprox {
  std::int64_t q = 0;
  std::int64_t a1 = 0;
  mpq_class x;    // dyadic, 0 <= x <= 1
  mpq_class eps;  // certified error bound
  unsigned precision_bits = 0;

  // Derived views for the fast prefilter path.
  double eps_upper = 0.0;                 // eps rounded up to double
  unsigned __int128 half_fixed = 0;       // floor(x * 2^127), i.e. x/2 in 2^-128 units
};

// Lower bound of 1 - (2/3) k / q^(k/4), as an exact rational.
mpq_class margin_factor_lower(std::int64_t q, unsigned k);

// Rational lower bound of (1 / 2N^2) (1 - (2/3) k / q^(k/4)) with k = 13
// for q = 2 and k = 3 otherwise. Requires q >= 2, N >= 3.
mpq_class required_eps(std::int64_t q, std::uint64_t N);

// Evaluates theta/pi with at least 20 guard digits beyond eps_target.
// Throws std::invalid_argument unless eps_target > 0.
AngleApprox frobenius_angle(const TracePair& pair, const mpq_class& eps_target);

struct Convergent {
  std::int64_t m = 0;
  std::int64_t n = 1;

  bool odd_odd() const noexcept { return (m & 1) != 0 && (n & 1) != 0; }
  friend bool operator==(const Convergent&, const Convergent&) = default;
};

// Convergents of x in [0, 1] with denominator <= N, ascending in the
// denominator, in lowest terms.
std::vector<Convergent> convergents(const mpq_class& x, std::uint64_t N);

// Necessary condition for maximality: some odd m with
// |m + n x| < (1/3) q^(-n/4), widened by the angle uncertainty. Returns false
// only when is_maximal(pair, n) is certainly false.
// Throws InsufficientPrecision if n * eps >= 1/8, where nothing useful can
// be said; recompute the angle at a smaller eps.
bool prefilter(const TracePair& pair, std::uint64_t n, const AngleApprox& angle);

// The odd integer nearest to -n x.
BigInt nearest_odd_multiplier(std::uint64_t n, const AngleApprox& angle);

}  // namespace maxcurves
