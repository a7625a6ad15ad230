#include "doctest.h"
#include "oracle.hpp"

#include "maxcurves/degree_bound.hpp"
#include "maxcurves/diophantine.hpp"
#include "maxcurves/exact_arith.hpp"

using namespace maxcurves;
using oracle::Real;

namespace {

Real to_real(const mpq_class& r) {
  return Real(r.get_num().get_str()) / Real(r.get_den().get_str());
}

// 1 - (2/3) k / q^(k/4)
Real factor(std::int64_t q, unsigned k) {
  return 1 - Real(2) / 3 * k / pow(Real(q), Real(k) / 4);
}

}  // namespace

TEST_CASE("required_eps examples") {
  for (std::uint64_t N : {3ull, 10ull, 1000ull, 1093183ull}) {
    const Real v = to_real(required_eps(3, N));
    const Real half = Real(1) / (2 * Real(N) * Real(N));
    CHECK(v < half);
    CHECK(v <= factor(3, 3) * half);
    CHECK(v > (factor(3, 3) - Real("1e-15")) * half);
  }
  const mpq_class e2 = required_eps(2, 10);
  CHECK(sgn(e2) > 0);
  CHECK(e2 < mpq_class(1, 200));
  CHECK(to_real(e2) > (factor(2, 13) - Real("1e-15")) / 200);
  CHECK_THROWS(required_eps(2, 2));
}

TEST_CASE("q = 2 factor turns positive at 13") {
  for (unsigned n = 3; n <= 12; ++n) CHECK(factor(2, n) <= 0);
  CHECK(factor(2, 13) > 0);
  CHECK(sgn(margin_factor_lower(2, 13)) > 0);
  CHECK(to_real(margin_factor_lower(2, 13)) <= factor(2, 13));
  CHECK(sgn(margin_factor_lower(2, 12)) <= 0);
}

TEST_CASE("frobenius_angle examples") {
  const mpq_class tiny(1, 1000000);
  for (std::int64_t q : {2, 3, 1000, 999983}) {
    const AngleApprox a = frobenius_angle(TracePair(q, 0), tiny);
    CHECK(abs(a.x - mpq_class(1, 2)) <= a.eps);
  }
  const AngleApprox pi_case = frobenius_angle(TracePair(4, -4), tiny);
  CHECK(abs(pi_case.x - 1) <= pi_case.eps);
  const AngleApprox zero_case = frobenius_angle(TracePair(4, 4), tiny);
  CHECK(abs(zero_case.x) <= zero_case.eps);

  mpz_class ten20;
  mpz_ui_pow_ui(ten20.get_mpz_t(), 10, 20);
  const AngleApprox a = frobenius_angle(TracePair(2, 1), mpq_class(1, ten20));
  CHECK(a.eps <= mpq_class(1, ten20));
  // Pinned value of arccos(1/(2 sqrt 2))/pi.
  const Real pinned("0.38497327191869205739310971614742855349504430236464");
  CHECK(abs(to_real(a.x) - pinned) <= to_real(a.eps));
  CHECK(abs(to_real(a.x) - oracle::angle(2, 1)) <= to_real(a.eps));
  CHECK_THROWS_AS(frobenius_angle(TracePair(2, 1), mpq_class(0)), std::invalid_argument);
  CHECK_THROWS_AS(frobenius_angle(TracePair(2, 1), mpq_class(-1)), std::invalid_argument);
}

TEST_CASE("angle error stays below eps on random pairs") {
  auto gen = oracle::rng(4);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t q = 2 + static_cast<std::int64_t>(gen() % 1000000);
    const std::int64_t bound = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(4 * q)));
    const std::int64_t a = static_cast<std::int64_t>(gen() % (2 * bound + 1)) - bound;
    const mpq_class target(1, mpz_class(1) << static_cast<unsigned>(10 + gen() % 140));
    const AngleApprox x = frobenius_angle(TracePair(q, a), target);
    INFO("q=" << q << " a1=" << a);
    CHECK(x.eps <= target);
    CHECK(sgn(x.x) >= 0);
    CHECK(x.x <= 1);
    using oracle::Real100;
    const Real100 xr = Real100(x.x.get_num().get_str()) / Real100(x.x.get_den().get_str());
    const Real100 er = Real100(x.eps.get_num().get_str()) / Real100(x.eps.get_den().get_str());
    CHECK(abs(xr - oracle::angle<Real100>(q, a)) <= er);
  }
}

TEST_CASE("convergents examples") {
  CHECK(convergents(mpq_class(1, 2), 10) ==
        std::vector<Convergent>{{0, 1}, {1, 1}, {1, 2}});
  CHECK(convergents(mpq_class(0), 5) == std::vector<Convergent>{{0, 1}});
  CHECK(convergents(mpq_class(1), 5) == std::vector<Convergent>{{1, 1}});
  const AngleApprox a = frobenius_angle(TracePair(2, 1), required_eps(2, 20));
  const auto cs = convergents(a.x, 20);
  CHECK(std::find(cs.begin(), cs.end(), Convergent{5, 13}) != cs.end());
  CHECK(Convergent{5, 13}.odd_odd());
  CHECK_FALSE(Convergent{2, 5}.odd_odd());
  CHECK_THROWS(convergents(mpq_class(3, 2), 10));
  CHECK_THROWS(convergents(mpq_class(-1, 2), 10));
}

TEST_CASE("convergent law and approximation quality") {
  auto gen = oracle::rng(5);
  for (int i = 0; i < 300; ++i) {
    const mpz_class den = mpz_class(1) << static_cast<unsigned>(1 + gen() % 200);
    const mpz_class wide = (mpz_class(static_cast<unsigned long>(gen())) << 64) +
                           mpz_class(static_cast<unsigned long>(gen()));
    mpq_class x(wide % (den + 1), den);
    x.canonicalize();
    const std::uint64_t N = 1 + gen() % 1000000000;
    const auto cs = convergents(x, N);
    REQUIRE_FALSE(cs.empty());
    for (std::size_t k = 0; k < cs.size(); ++k) {
      CHECK(cs[k].n <= static_cast<std::int64_t>(N));
      CHECK(std::gcd(cs[k].m, cs[k].n) == 1);
      if (k + 1 < cs.size()) {
        const __int128 det = static_cast<__int128>(cs[k].m) * cs[k + 1].n -
                             static_cast<__int128>(cs[k + 1].m) * cs[k].n;
        CHECK((det == 1 || det == -1));
        // q_0 = q_1 = 1 when x >= 1/2
        if (k > 0) {
          CHECK(cs[k].n < cs[k + 1].n);
        } else {
          CHECK(cs[k].n <= cs[k + 1].n);
        }
        const mpq_class err = abs(x - mpq_class(cs[k].m, cs[k].n));
        const mpq_class bound(1, mpz_class(cs[k].n) * mpz_class(cs[k + 1].n));
        // equality only right before a last convergent that is x itself
        const bool ends_at_x =
            k + 2 == cs.size() && mpq_class(cs.back().m, cs.back().n) == x;
        if (ends_at_x) {
          CHECK(err <= bound);
        } else {
          CHECK(err < bound);
        }
        // alternate sides
        const int s1 = sgn(x - mpq_class(cs[k].m, cs[k].n));
        const int s2 = sgn(x - mpq_class(cs[k + 1].m, cs[k + 1].n));
        if (s1 != 0 && s2 != 0) CHECK(s1 == -s2);
      }
    }
  }
}

TEST_CASE("prefilter examples") {
  const AngleApprox a21 = frobenius_angle(TracePair(2, 1), mpq_class(1, mpz_class(1) << 100));
  CHECK_FALSE(prefilter(TracePair(2, 1), 4, a21));
  CHECK(prefilter(TracePair(2, 1), 3, a21));
  CHECK(prefilter(TracePair(2, 1), 13, a21));
  const AngleApprox a32 = frobenius_angle(TracePair(3, 2), mpq_class(1, mpz_class(1) << 100));
  CHECK(prefilter(TracePair(3, 2), 3, a32));
  CHECK(is_maximal(TracePair(3, 2), 3));
  AngleApprox coarse = a32;
  coarse.eps = mpq_class(1, 64);
  coarse.eps_upper = 1.0 / 64;
  CHECK_THROWS_AS(prefilter(TracePair(3, 2), 1000, coarse), InsufficientPrecision);
  CHECK_THROWS(prefilter(TracePair(3, 1), 3, a32));
}

TEST_CASE("prefilter never rejects a maximal degree") {
  const mpq_class eps(1, mpz_class(1) << 80);
  for (std::int64_t q = 2; q <= 100; ++q) {
    for (std::int64_t a = -2 * q; a <= 2 * q; ++a) {
      if (a * a > 4 * q) continue;
      const TracePair pair(q, a);
      const AngleApprox angle = frobenius_angle(pair, eps);
      for (std::uint64_t n = 1; n <= 500; ++n) {
        if (!prefilter(pair, n, angle)) {
          INFO("q=" << q << " a1=" << a << " n=" << n);
          REQUIRE_FALSE(is_maximal(pair, n));
        }
      }
    }
  }
}

TEST_CASE("nearest odd multiplier") {
  const AngleApprox a = frobenius_angle(TracePair(2, 1), mpq_class(1, mpz_class(1) << 90));
  // 13 x = 5.0046..., nearest odd to -13 x is -5
  CHECK(nearest_odd_multiplier(13, a) == -5);
  CHECK(nearest_odd_multiplier(3, a) == -1);
}

TEST_CASE("some odd/odd convergent denominator divides each maximal degree") {
  for (const auto& [q, a] : oracle::ordinary_pairs(3, 400, true)) {
    const TracePair pair(q, a);
    const std::uint64_t N = cached_max_degree(q).n_max;
    const AngleApprox angle = frobenius_angle(pair, required_eps(q, N));
    std::vector<std::int64_t> dens;
    for (const Convergent& c : convergents(angle.x, N)) {
      if (c.odd_odd()) dens.push_back(c.n);
    }
    for (std::uint64_t n = 3; n <= 200; n += 2) {
      if (!oracle::is_maximal(q, a, n)) continue;
      const bool captured = std::any_of(dens.begin(), dens.end(), [n](std::int64_t d) {
        return n % static_cast<std::uint64_t>(d) == 0;
      });
      INFO("q=" << q << " a1=" << a << " n=" << n);
      CHECK(captured);
    }
  }
}
