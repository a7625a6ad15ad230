#include "maxcurves/degree_bound.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "maxcurves/exact_arith.hpp"
#include "mpfr_real.hpp"

namespace maxcurves {

namespace {

using detail::MpfrReal;

constexpr unsigned kMaxPrecision = 4096;

// One end of the enclosure of f(q, n). `dir` is the rounding direction of
// the result: MPFR_RNDD yields a lower bound, MPFR_RNDU an upper bound.
// All intermediate terms are positive, so each is rounded towards the side
// that moves the final value in `dir`.
MpfrReal bound_end(std::int64_t q, double n, mpfr_prec_t prec, mpfr_rnd_t dir) {
  const mpfr_rnd_t same = dir;
  const mpfr_rnd_t opposite = dir == MPFR_RNDD ? MPFR_RNDU : MPFR_RNDD;

  auto decimal = [prec](const char* text, mpfr_rnd_t rnd) {
    MpfrReal v(prec);
    mpfr_set_str(v.get(), text, 10, rnd);
    return v;
  };
  auto log_q = [&](mpfr_rnd_t rnd) {
    MpfrReal v(prec);
    mpfr_set_si(v.get(), q, MPFR_RNDN);  // exact for q < 2^prec
    mpfr_log(v.get(), v.get(), rnd);
    return v;
  };

  // A = n/4 log q, enters with +.
  MpfrReal a = log_q(same);
  mpfr_mul_d(a.get(), a.get(), n / 4.0, same);

  // B = 8.87 (10.98 pi + 1/2 log q) (2 log n + 3.27)^2, enters with -.
  MpfrReal pi(prec);
  mpfr_const_pi(pi.get(), opposite);
  MpfrReal left = decimal("10.98", opposite);
  mpfr_mul(left.get(), left.get(), pi.get(), opposite);
  MpfrReal half_log_q = log_q(opposite);
  mpfr_div_2ui(half_log_q.get(), half_log_q.get(), 1, opposite);
  mpfr_add(left.get(), left.get(), half_log_q.get(), opposite);

  MpfrReal right(prec);
  mpfr_set_d(right.get(), n, MPFR_RNDN);
  mpfr_log(right.get(), right.get(), opposite);
  mpfr_mul_2ui(right.get(), right.get(), 1, opposite);
  MpfrReal shift = decimal("3.27", opposite);
  mpfr_add(right.get(), right.get(), shift.get(), opposite);
  mpfr_sqr(right.get(), right.get(), opposite);

  MpfrReal b = decimal("8.87", opposite);
  mpfr_mul(b.get(), b.get(), left.get(), opposite);
  mpfr_mul(b.get(), b.get(), right.get(), opposite);

  // C = log(pi/3) > 0, enters with -.
  MpfrReal c(prec);
  mpfr_const_pi(c.get(), opposite);
  mpfr_div_ui(c.get(), c.get(), 3, opposite);
  mpfr_log(c.get(), c.get(), opposite);

  MpfrReal out(prec);
  mpfr_sub(out.get(), a.get(), b.get(), same);
  mpfr_sub(out.get(), out.get(), c.get(), same);
  return out;
}

std::string to_digits(mpfr_srcptr v) {
  char buf[128];
  mpfr_snprintf(buf, sizeof buf, "%.35Re", v);
  return buf;
}

// Certified sign of f(q, n), escalating precision; throws when even the
// widest precision leaves the sign undecided.
int certified_sign(std::int64_t q, double n) {
  for (unsigned prec = 128; prec <= kMaxPrecision; prec *= 2) {
    const BoundValue v = bound_fn(q, n, prec);
    if (v.sign != 0) return v.sign;
  }
  throw PrecisionExhausted("cannot certify the sign of the degree bound function");
}

}  // namespace

BoundValue bound_fn(std::int64_t q, double n, unsigned precision_bits) {
  if (q < 2) throw std::invalid_argument("bound_fn requires q >= 2");
  if (!(n >= 1.0) || !std::isfinite(n)) {
    throw std::invalid_argument("bound_fn requires n >= 1");
  }
  if (precision_bits < 100) precision_bits = 100;

  const MpfrReal lo = bound_end(q, n, precision_bits, MPFR_RNDD);
  const MpfrReal hi = bound_end(q, n, precision_bits, MPFR_RNDU);

  MpfrReal mid(precision_bits + 1);
  mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);

  BoundValue out;
  out.approx = mpfr_get_d(mid.get(), MPFR_RNDN);
  out.digits = to_digits(mid.get());
  // The printed midpoint, bracketed: error = max(hi - d_lo, d_hi - lo), rounded up.
  MpfrReal d_lo(precision_bits + 64);
  MpfrReal d_hi(precision_bits + 64);
  mpfr_set_str(d_lo.get(), out.digits.c_str(), 10, MPFR_RNDD);
  mpfr_set_str(d_hi.get(), out.digits.c_str(), 10, MPFR_RNDU);
  MpfrReal below(precision_bits);
  MpfrReal above(precision_bits);
  mpfr_sub(below.get(), hi.get(), d_lo.get(), MPFR_RNDU);
  mpfr_sub(above.get(), d_hi.get(), lo.get(), MPFR_RNDU);
  mpfr_max(below.get(), below.get(), above.get(), MPFR_RNDU);
  out.error_bound = mpfr_get_d(below.get(), MPFR_RNDU);
  if (mpfr_sgn(lo.get()) > 0) {
    out.sign = 1;
  } else if (mpfr_sgn(hi.get()) < 0) {
    out.sign = -1;
  }
  out.precision_bits = precision_bits;
  return out;
}

DegreeBound max_degree(std::int64_t q) {
  if (q < 2) throw std::invalid_argument("max_degree requires q >= 2");

  // f(q, 8007) < 0 for every q; the zero N_q lies above it.
  std::uint64_t lo = 8007;
  if (certified_sign(q, static_cast<double>(lo)) >= 0) {
    throw InvariantViolation("degree bound function is not negative at 8007");
  }
  std::uint64_t hi = 2 * lo;
  while (certified_sign(q, static_cast<double>(hi)) < 0) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (certified_sign(q, static_cast<double>(mid)) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  // Integer bracket pins ceil(N_q) = hi; narrow the real bracket a bit more.
  double rlo = static_cast<double>(lo);
  double rhi = static_cast<double>(hi);
  for (int i = 0; i < 10; ++i) {
    const double mid = 0.5 * (rlo + rhi);
    if (certified_sign(q, mid) < 0) {
      rlo = mid;
    } else {
      rhi = mid;
    }
  }
  return DegreeBound{q, hi, {rlo, rhi}};
}

const DegreeBound& cached_max_degree(std::int64_t q) {
  static std::shared_mutex mutex;
  static std::map<std::int64_t, std::unique_ptr<DegreeBound>> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(q); it != cache.end()) return *it->second;
  }
  auto value = std::make_unique<DegreeBound>(max_degree(q));
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.try_emplace(q, std::move(value));
  return *it->second;
}

}  // namespace maxcurves
