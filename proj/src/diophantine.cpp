#include "maxcurves/diophantine.hpp"

#include <cmath>

#include "mpfr_real.hpp"

namespace maxcurves {

namespace {

using detail::MpfrReal;
using u128 = unsigned __int128;

// Guard bits beyond the requested eps: 20 decimal digits plus slack.
constexpr unsigned kGuardBits = 67 + 8;

// Fast prefilter is only used while its 2^-126 truncation slack is
// negligible next to eps.
constexpr int kFastPathMinExponent = -120;

// Smallest t with 2^-t <= eps, for eps > 0.
unsigned bits_for(const mpq_class& eps) {
  const auto num_bits = static_cast<long>(mpz_sizeinbase(eps.get_num_mpz_t(), 2));
  const auto den_bits = static_cast<long>(mpz_sizeinbase(eps.get_den_mpz_t(), 2));
  const long t = den_bits - num_bits + 1;
  return t < 1 ? 1U : static_cast<unsigned>(t);
}

mpq_class from_mpfr(mpfr_srcptr v) {
  mpz_class mant;
  const mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v);
  mpq_class out(mant);
  if (e >= 0) {
    mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  out.canonicalize();
  return out;
}

u128 to_u128(const mpz_class& z) {
  u128 out = 0;
  mpz_class rest = z;
  const mpz_class mask = (mpz_class(1) << 64) - 1;
  for (int shift = 0; shift < 128 && sgn(rest) > 0; shift += 64) {
    const mpz_class limb = rest & mask;
    out |= static_cast<u128>(mpz_get_ui(limb.get_mpz_t())) << shift;
    rest >>= 64;
  }
  return out;
}

// log2 of (1/3) q^(-n/4), rounded up.
void log2_threshold_upper(MpfrReal& out, std::int64_t q, std::uint64_t n) {
  MpfrReal t(64);
  mpfr_set_si(out.get(), q, MPFR_RNDN);
  mpfr_log2(out.get(), out.get(), MPFR_RNDD);
  mpfr_mul_ui(out.get(), out.get(), n, MPFR_RNDD);
  mpfr_div_2ui(out.get(), out.get(), 2, MPFR_RNDD);
  mpfr_set_ui(t.get(), 3, MPFR_RNDN);
  mpfr_log2(t.get(), t.get(), MPFR_RNDD);
  mpfr_add(out.get(), out.get(), t.get(), MPFR_RNDD);
  mpfr_neg(out.get(), out.get(), MPFR_RNDN);  // exact
}

void check_pair(const TracePair& pair, const AngleApprox& angle) {
  if (angle.q != pair.q() || angle.a1 != pair.a1()) {
    throw std::invalid_argument("angle approximation belongs to a different pair");
  }
}

void check_precision(std::uint64_t n, const AngleApprox& angle) {
  if (static_cast<double>(n) * angle.eps_upper < 0.1) return;
  if (angle.eps * mpq_class(mpz_class(static_cast<unsigned long>(n))) >= mpq_class(1, 8)) {
    throw InsufficientPrecision("angle precision too coarse for degree " + std::to_string(n));
  }
}

bool prefilter_fast(std::int64_t q, std::uint64_t n, const AngleApprox& angle) {
  constexpr u128 kHalf = static_cast<u128>(1) << 127;
  // frac(n x / 2) in 2^-128 units; the distance from n x to the nearest odd
  // integer is |frac(n x / 2) - 1/2| * 2.
  const u128 f = static_cast<u128>(n) * angle.half_fixed;
  const u128 d = f >= kHalf ? f - kHalf : kHalf - f;
  const long double dist = std::ldexp(static_cast<long double>(d), -127);
  const long double nn = static_cast<long double>(n);
  const long double slack = nn * (static_cast<long double>(angle.eps_upper) + std::ldexp(1.0L, -126));
  const long double lower = dist * (1.0L - std::ldexp(1.0L, -60)) - slack * (1.0L + std::ldexp(1.0L, -60));
  if (lower <= 0) return true;
  const long double log2_threshold =
      -std::log2(3.0L) - nn / 4.0L * std::log2(static_cast<long double>(q));
  const long double margin = 1e-9L * (1.0L + std::fabs(log2_threshold));
  return !(std::log2(lower) > log2_threshold + margin);
}

bool prefilter_exact(std::int64_t q, std::uint64_t n, const AngleApprox& angle) {
  const mpq_class nq{mpz_class(static_cast<unsigned long>(n))};
  const mpq_class y = nq * angle.x;
  mpz_class half_floor;
  mpz_fdiv_q(half_floor.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  half_floor >>= 1;  // floor(y / 2)
  const mpq_class odd{mpz_class(2 * half_floor + 1)};
  mpq_class dist = y - odd;
  if (sgn(dist) < 0) dist = -dist;
  const mpq_class lower = dist - nq * angle.eps;
  if (sgn(lower) <= 0) return true;

  MpfrReal lhs(64);
  mpfr_set_q(lhs.get(), lower.get_mpq_t(), MPFR_RNDD);
  mpfr_log2(lhs.get(), lhs.get(), MPFR_RNDD);
  MpfrReal rhs(64);
  log2_threshold_upper(rhs, q, n);
  return !(mpfr_cmp(lhs.get(), rhs.get()) > 0);
}

}  // namespace

mpq_class margin_factor_lower(std::int64_t q, unsigned k) {
  if (q < 2) throw std::invalid_argument("margin factor requires q >= 2");
  constexpr unsigned kScaleBits = 64;
  // floor((q^k 2^(4s))^(1/4)) / 2^s <= q^(k/4).
  mpz_class scaled;
  mpz_ui_pow_ui(scaled.get_mpz_t(), static_cast<unsigned long>(q), k);
  scaled <<= 4 * kScaleBits;
  const mpz_class root = isqrt(isqrt(scaled));
  mpq_class root_lower(root, mpz_class(1) << kScaleBits);
  root_lower.canonicalize();
  mpq_class factor = 1 - mpq_class(2 * k, 3) / root_lower;
  factor.canonicalize();
  return factor;
}

mpq_class required_eps(std::int64_t q, std::uint64_t N) {
  if (q < 2) throw std::invalid_argument("required_eps requires q >= 2");
  if (N < 3) throw std::invalid_argument("required_eps requires N >= 3");
  const mpz_class nn(static_cast<unsigned long>(N));
  mpq_class out = margin_factor_lower(q, q == 2 ? 13U : 3U) / mpq_class(2 * nn * nn);
  out.canonicalize();
  return out;
}

AngleApprox frobenius_angle(const TracePair& pair, const mpq_class& eps_target) {
  if (sgn(eps_target) <= 0) throw std::invalid_argument("eps_target must be positive");
  const unsigned prec = bits_for(eps_target) + kGuardBits;

  // theta = atan2(sqrt(4q - a1^2), a1); arg(alpha) for alpha in the upper
  // half-plane. atan2 stays well-conditioned where acos does not.
  const mpz_class q(static_cast<long>(pair.q()));
  const mpz_class a1(static_cast<long>(pair.a1()));
  const mpz_class disc = 4 * q - a1 * a1;

  MpfrReal s(prec);
  mpfr_set_z(s.get(), disc.get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(s.get(), s.get(), MPFR_RNDN);
  MpfrReal c(prec);
  mpfr_set_z(c.get(), a1.get_mpz_t(), MPFR_RNDN);
  MpfrReal theta(prec);
  mpfr_atan2(theta.get(), s.get(), c.get(), MPFR_RNDN);
  MpfrReal pi(prec);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  MpfrReal x(prec);
  mpfr_div(x.get(), theta.get(), pi.get(), MPFR_RNDN);
  if (mpfr_cmp_ui(x.get(), 1) > 0) mpfr_set_ui(x.get(), 1, MPFR_RNDN);
  if (mpfr_sgn(x.get()) < 0) mpfr_set_ui(x.get(), 0, MPFR_RNDN);

  // Four correctly rounded steps plus the sqrt perturbation (whose effect on
  // theta is at most u/2) keep |x - theta/pi| below 4u, u = 2^-prec; 16u is
  // reported.
  AngleApprox out;
  out.q = pair.q();
  out.a1 = pair.a1();
  out.precision_bits = prec;
  out.x = from_mpfr(x.get());
  out.eps = mpq_class(1);
  mpq_div_2exp(out.eps.get_mpq_t(), out.eps.get_mpq_t(), prec - 4);

  MpfrReal eps_up(64);
  mpfr_set_q(eps_up.get(), out.eps.get_mpq_t(), MPFR_RNDU);
  out.eps_upper = mpfr_get_d(eps_up.get(), MPFR_RNDU);

  mpz_class scaled;
  mpq_class shifted = out.x;
  mpq_mul_2exp(shifted.get_mpq_t(), shifted.get_mpq_t(), 127);
  mpz_fdiv_q(scaled.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  out.half_fixed = to_u128(scaled);
  return out;
}

std::vector<Convergent> convergents(const mpq_class& x, std::uint64_t N) {
  if (sgn(x) < 0 || x > 1) throw std::invalid_argument("convergents expects 0 <= x <= 1");
  if (N < 1) throw std::invalid_argument("convergents expects N >= 1");

  std::vector<Convergent> out;
  const mpz_class cap(static_cast<unsigned long>(N));
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  // h_{-1}/k_{-1} = 1/0, h_{-2}/k_{-2} = 0/1.
  mpz_class h_prev2 = 0, h_prev = 1, k_prev2 = 1, k_prev = 0;
  mpz_class term, rem, h, k;
  while (sgn(den) != 0) {
    mpz_fdiv_qr(term.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    h = term * h_prev + h_prev2;
    k = term * k_prev + k_prev2;
    const bool last = sgn(rem) == 0;
    // A rational x also has the expansion [..., t - 1, 1]; when t >= 2 its
    // extra convergent precedes the final one.
    if (last && term >= 2 && sgn(k_prev) != 0) {
      const mpz_class hs = (term - 1) * h_prev + h_prev2;
      const mpz_class ks = (term - 1) * k_prev + k_prev2;
      if (ks <= cap) out.push_back({hs.get_si(), ks.get_si()});
    }
    if (k > cap) break;
    out.push_back({h.get_si(), k.get_si()});
    h_prev2.swap(h_prev);
    h_prev.swap(h);
    k_prev2.swap(k_prev);
    k_prev.swap(k);
    num.swap(den);
    den.swap(rem);
  }
  return out;
}

bool prefilter(const TracePair& pair, std::uint64_t n, const AngleApprox& angle) {
  if (n == 0) throw std::invalid_argument("prefilter requires n >= 1");
  check_pair(pair, angle);
  check_precision(n, angle);
  const bool fast = mpz_sizeinbase(angle.eps.get_den_mpz_t(), 2) <=
                    static_cast<std::size_t>(-kFastPathMinExponent);
  return fast ? prefilter_fast(pair.q(), n, angle) : prefilter_exact(pair.q(), n, angle);
}

BigInt nearest_odd_multiplier(std::uint64_t n, const AngleApprox& angle) {
  const mpq_class y = mpq_class(mpz_class(static_cast<unsigned long>(n))) * angle.x;
  mpz_class half_floor;
  mpz_fdiv_q(half_floor.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  half_floor >>= 1;
  return -(2 * half_floor + 1);
}

}  // namespace maxcurves
