#include "maxcurves/search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "maxcurves/degree_bound.hpp"
#include "maxcurves/primes.hpp"
#include "maxcurves/supersingular.hpp"

namespace maxcurves {

namespace {

// Degrees whose q^n stays below this many bits are checked exactly right
// after the base prefilter; beyond it the angle is refined first.
constexpr double kCheapExactBits = 1 << 15;

// 2^-bits <= (1/3) q^(-n/4) / (16 n): enough angle precision for the
// prefilter to decide degree n on its own.
mpq_class refined_eps(std::int64_t q, std::uint64_t n) {
  const double bits = static_cast<double>(n) / 4.0 * std::log2(static_cast<double>(q)) +
                      std::log2(static_cast<double>(n)) + 8.0;
  mpq_class eps(1);
  mpq_div_2exp(eps.get_mpq_t(), eps.get_mpq_t(), static_cast<mp_bitcnt_t>(std::ceil(bits)) + 2);
  return eps;
}

}  // namespace

void SearchConfig::validate() const {
  if (q_min < 2) throw std::invalid_argument("q_min must be >= 2");
  if (q_max < q_min) throw std::invalid_argument("q_max must be >= q_min");
  if (n_floor < 1) throw std::invalid_argument("n_floor must be >= 1");
  if (parallelism < 1) throw std::invalid_argument("parallelism must be >= 1");
}

SolutionTester::SolutionTester(const TracePair& pair, AngleApprox base)
    : pair_(pair), base_(std::move(base)) {}

bool SolutionTester::operator()(std::uint64_t n) {
  if (!prefilter(pair_, n, base_)) return false;
  const double bits = static_cast<double>(n) * std::log2(static_cast<double>(pair_.q()));
  if (bits > kCheapExactBits) {
    const mpq_class wanted = refined_eps(pair_.q(), n);
    if (!refined_ || refined_->eps > wanted) refined_ = frobenius_angle(pair_, wanted);
    if (!prefilter(pair_, n, *refined_)) return false;
  }
  ++exact_checks_;
  return is_maximal(pair_, n);
}

void convergents_to_solutions(SolutionTester& tester, std::uint64_t N, std::uint64_t n,
                              std::uint64_t n_floor, std::map<std::uint64_t, Source>& found,
                              std::unordered_set<std::uint64_t>& visited) {
  if (!visited.insert(n).second) return;

  if (!tester(n)) return;
  if (n >= n_floor) found[n] = Source::OrdinarySearch;
  for (const std::uint32_t p : odd_primes_up_to(N / n)) {
    convergents_to_solutions(tester, N, p * n, n_floor, found, visited);
  }
}

std::map<std::uint64_t, Source> ordinary_solutions(const TracePair& pair,
                                                   std::uint64_t n_floor) {
  if (classify(pair).supersingular()) {
    throw WrongClassification("ordinary search called on a supersingular pair; "
                              "use supersingular_degrees");
  }
  std::map<std::uint64_t, Source> found;
  // An ordinary pair over a square q is never maximal.
  if (is_perfect_square(pair.q())) return found;

  const std::uint64_t N = cached_max_degree(pair.q()).n_max;
  SolutionTester tester(pair, frobenius_angle(pair, required_eps(pair.q(), N)));

  std::unordered_set<std::uint64_t> visited;
  for (const Convergent& c : convergents(tester.angle().x, N)) {
    if (!c.odd_odd()) continue;
    convergents_to_solutions(tester, N, static_cast<std::uint64_t>(c.n), n_floor, found,
                             visited);
  }
  // The convergent criterion only covers n >= 13 when q = 2.
  if (pair.q() == 2) {
    for (std::uint64_t n : {3, 5, 7, 9, 11}) {
      if (n >= n_floor && is_maximal(pair, n)) found.try_emplace(n, Source::DirectCheck);
    }
  }
  return found;
}

std::vector<std::uint64_t> ordinary_degrees(const TracePair& pair) {
  std::vector<std::uint64_t> out;
  for (const auto& [n, source] : ordinary_solutions(pair)) out.push_back(n);
  return out;
}

std::vector<MaximalTriple> triples_for_q(std::int64_t q, const SearchConfig& cfg) {
  std::vector<MaximalTriple> out;
  const auto q_unsigned = static_cast<std::uint64_t>(q);
  if (q < 2 || !is_prime_power(q_unsigned)) return out;
  const auto bound = static_cast<std::int64_t>(isqrt(4 * q_unsigned));

  std::vector<std::int64_t> super;
  if (cfg.include_supersingular) super = supersingular_traces(q);
  const bool square = is_perfect_square(q);

  for (std::int64_t a1 = -bound; a1 <= bound; ++a1) {
    const TracePair pair(q, a1);
    if (std::binary_search(super.begin(), super.end(), a1)) {
      // First member of the progression, plus any sporadic small degree.
      const DegreeProgression prog = supersingular_degrees(pair);
      std::map<std::uint64_t, Source> found;
      for (std::uint64_t n : prog.sporadic) {
        if (n >= cfg.n_floor) found.emplace(n, Source::DirectCheck);
      }
      if (!prog.empty) {
        DegreeProgression bare = prog;
        bare.sporadic.clear();
        found.emplace(bare.first_at_least(cfg.n_floor), Source::SupersingularProgression);
      }
      for (const auto& [n, source] : found) out.push_back({q, a1, n, source});
      continue;
    }
    if (square || std::gcd(q, a1) != 1) continue;
    for (const auto& [n, source] : ordinary_solutions(pair, cfg.n_floor)) {
      out.push_back({q, a1, n, source});
    }
  }
  if (cfg.verify) {
    for (const MaximalTriple& t : out) {
      if (!is_maximal(TracePair(t.q, t.a1), t.n)) {
        throw InvariantViolation("emitted triple fails the exact maximality test");
      }
    }
  }
  std::sort(out.begin(), out.end(), triple_less);
  return out;
}

void enumerate_triples(const SearchConfig& cfg,
                       const std::function<void(const MaximalTriple&)>& sink) {
  cfg.validate();
  const std::vector<std::uint64_t> qs = prime_powers_in(static_cast<std::uint64_t>(cfg.q_min),
                                                        static_cast<std::uint64_t>(cfg.q_max));
  // Blocks bound the memory held for the ordered merge.
  constexpr std::size_t kBlock = 256;
  std::vector<std::vector<MaximalTriple>> buffers;
  for (std::size_t start = 0; start < qs.size(); start += kBlock) {
    const std::size_t count = std::min(kBlock, qs.size() - start);
    buffers.assign(count, {});
    std::exception_ptr failure;
    const auto block = static_cast<std::int64_t>(count);

#pragma omp parallel for schedule(dynamic, 1) num_threads(cfg.parallelism) if (cfg.parallelism > 1)
    for (std::int64_t i = 0; i < block; ++i) {
      try {
        buffers[static_cast<std::size_t>(i)] =
            triples_for_q(static_cast<std::int64_t>(qs[start + static_cast<std::size_t>(i)]), cfg);
      } catch (...) {
#pragma omp critical(maxcurves_search_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    for (const auto& buffer : buffers) {
      for (const MaximalTriple& t : buffer) sink(t);
    }
  }
}

std::vector<MaximalTriple> enumerate_triples(const SearchConfig& cfg) {
  std::vector<MaximalTriple> out;
  enumerate_triples(cfg, [&out](const MaximalTriple& t) { out.push_back(t); });
  return out;
}

namespace reference {

std::vector<std::uint64_t> brute_force_degrees(const TracePair& pair, std::uint64_t n_lo,
                                               std::uint64_t n_hi) {
  std::vector<std::uint64_t> out;
  const mpz_class q(static_cast<long>(pair.q()));
  const mpz_class a1(static_cast<long>(pair.a1()));
  mpz_class prev = 2, cur = a1, next;
  mpz_class four_qn = 4 * q;  // 4 q^n for the current n
  for (std::uint64_t n = 1; n <= n_hi; ++n) {
    if (n >= n_lo) {
      // -a_n = floor(sqrt(4 q^n))  <=>  (-a_n)^2 <= 4 q^n < (-a_n + 1)^2, -a_n >= 0.
      const mpz_class neg = -cur;
      if (sgn(neg) >= 0 && neg * neg <= four_qn && four_qn < (neg + 1) * (neg + 1)) {
        out.push_back(n);
      }
    }
    next = a1 * cur - q * prev;
    prev = cur;
    cur = next;
    four_qn *= q;
  }
  return out;
}

}  // namespace reference

}  // namespace maxcurves
