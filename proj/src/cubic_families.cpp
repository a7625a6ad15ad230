#include "maxcurves/cubic_families.hpp"

#include <exception>
#include <stdexcept>

#include "maxcurves/primes.hpp"

namespace maxcurves {

namespace {

// c^den < p^num, i.e. c < p^(num/den) for c >= 0.
bool below_power(std::uint64_t c, std::uint64_t p, const mpz_class& num, const mpz_class& den) {
  if (c == 0) return true;
  mpz_class lhs, rhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), c, den.get_ui());
  mpz_ui_pow_ui(rhs.get_mpz_t(), p, num.get_ui());
  return lhs < rhs;
}

// a^den >= p^(4 num), i.e. a >= p^(4 theta).
bool at_least_power4(std::uint64_t a, std::uint64_t p, const mpz_class& num,
                     const mpz_class& den) {
  mpz_class lhs, rhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), a, den.get_ui());
  mpz_ui_pow_ui(rhs.get_mpz_t(), p, 4 * num.get_ui());
  return lhs >= rhs;
}

std::vector<SectorPrime> sector_row(std::uint64_t a, const mpz_class& num, const mpz_class& den) {
  std::vector<SectorPrime> row;
  // c^4 <= a bounds S_3. For S_4, c < p^theta < (2a^2)^(1/8) once c <= a,
  // so c^8 < 2 a^2 bounds it; c > a would need c < (2c^2)^theta < c.
  for (std::uint64_t c = 0;; ++c) {
    const auto c2 = static_cast<unsigned __int128>(c) * c;
    const bool in_s3_window = c2 * c2 <= a;
    const bool in_s4_window = c <= a && c2 * c2 * c2 * c2 < 2 * static_cast<unsigned __int128>(a) * a;
    if (!in_s3_window && !in_s4_window) break;
    const std::uint64_t p = a * a + c * c;
    if (!is_prime(p)) continue;
    SectorPrime sp{p, a, c};
    sp.s3 = in_s3_window;
    sp.s4 = below_power(c, p, num, den);
    if (sp.s4) {
      sp.s5 = at_least_power4(a, p, num, den);
      sp.s6 = !sp.s5;
    }
    if (sp.s3 || sp.s4) row.push_back(sp);
  }
  return row;
}

template <typename Row, typename Fn>
std::vector<Row> ordered_parallel_rows(std::int64_t count, unsigned parallelism, Fn&& row_of) {
  std::vector<std::vector<Row>> rows(static_cast<std::size_t>(count));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 64) num_threads(parallelism) if (parallelism > 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      rows[static_cast<std::size_t>(i)] = row_of(i);
    } catch (...) {
#pragma omp critical(maxcurves_cubic_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<Row> out;
  for (auto& row : rows) out.insert(out.end(), row.begin(), row.end());
  return out;
}

}  // namespace

std::vector<std::int64_t> cubic_candidates(std::int64_t q) {
  if (q < 3) throw std::invalid_argument("cubic_candidates requires q >= 3");
  const auto two_root = static_cast<std::int64_t>(isqrt(4 * static_cast<std::uint64_t>(q)));
  // floor((floor(2 sqrt q) + 1) / 2) is the nearest integer to sqrt q.
  return {-two_root, (two_root + 1) / 2};
}

bool square_exclusion_check(std::int64_t q) {
  const auto two_root = static_cast<std::int64_t>(isqrt(4 * static_cast<std::uint64_t>(q)));
  return is_maximal(TracePair(q, -two_root), 3);
}

std::optional<MaximalTriple> soomro_test(std::int64_t a1, std::int64_t b,
                                         const std::optional<SoomroRelaxation>& relaxed) {
  if (a1 < 2) throw std::invalid_argument("soomro_test requires a1 >= 2");
  const mpz_class bb = mpz_class(static_cast<long>(b)) * b;
  bool qualifies = bb <= a1;
  if (relaxed) {
    if (sgn(relaxed->epsilon) <= 0 || relaxed->epsilon > mpq_class(1, 3)) {
      throw std::invalid_argument("relaxation epsilon must lie in (0, 1/3]");
    }
    // b^2 <= (4/3) a1 / (1 + epsilon)
    qualifies = mpq_class(bb) * 3 * (1 + relaxed->epsilon) <= mpq_class(4 * a1);
  }
  if (!qualifies) return std::nullopt;

  const std::int64_t q = a1 * a1 + b;
  const MaximalTriple triple{q, a1, 3, Source::CubicFamily};
  if (is_maximal(TracePair(q, a1), 3)) return triple;
  if (relaxed) return std::nullopt;
  throw InvariantViolation("Soomro condition holds but (" + std::to_string(q) + ", " +
                           std::to_string(a1) + ", 3) is not maximal");
}

std::vector<MaximalTriple> soomro_family(std::int64_t a_max, unsigned parallelism) {
  if (a_max < 2) return {};
  return ordered_parallel_rows<MaximalTriple>(a_max - 1, parallelism, [](std::int64_t i) {
    const std::int64_t a1 = i + 2;
    const auto r = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(a1)));
    std::vector<MaximalTriple> row;
    for (std::int64_t b = -r; b <= r; ++b) {
      if (auto t = soomro_test(a1, b)) row.push_back(*t);
    }
    return row;
  });
}

std::vector<SectorPrime> sector_enumerate(std::uint64_t a_max, const mpq_class& theta,
                                          unsigned parallelism) {
  if (a_max < 1) throw std::invalid_argument("sector_enumerate requires a_max >= 1");
  if (sgn(theta) <= 0 || theta >= mpq_class(1, 8)) {
    throw std::invalid_argument("theta must lie in (0, 1/8)");
  }
  const mpz_class num = theta.get_num();
  const mpz_class den = theta.get_den();
  if (den > 4096) throw std::invalid_argument("theta denominator too large (max 4096)");
  return ordered_parallel_rows<SectorPrime>(
      static_cast<std::int64_t>(a_max), parallelism,
      [&](std::int64_t i) { return sector_row(static_cast<std::uint64_t>(i) + 1, num, den); });
}

std::vector<MaximalTriple> cubic_prime_family(std::uint64_t a_max, unsigned parallelism) {
  std::vector<MaximalTriple> out;
  for (const SectorPrime& sp : sector_enumerate(a_max, default_theta(), parallelism)) {
    if (!sp.s3) continue;
    // b = c^2, and p = a^2 + b with |b| <= sqrt(a).
    const MaximalTriple t{static_cast<std::int64_t>(sp.p), static_cast<std::int64_t>(sp.a), 3,
                          Source::CubicFamily};
    if (!is_maximal(TracePair(t.q, t.a1), 3)) {
      throw InvariantViolation("sector prime (" + std::to_string(sp.p) + ", " +
                               std::to_string(sp.a) + ") is not maximal at degree 3");
    }
    out.push_back(t);
  }
  return out;
}

}  // namespace maxcurves
