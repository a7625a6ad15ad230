// Serial brute force vs. the convergent pipeline, and the pipeline at
// several thread counts.

#include <benchmark/benchmark.h>

#include "maxcurves/cubic_families.hpp"
#include "maxcurves/degree_bound.hpp"
#include "maxcurves/search.hpp"

using namespace maxcurves;

namespace {

// All ordinary pairs for q = 101, n in [2, n_hi].
void BM_BruteForce(benchmark::State& state) {
  const auto n_hi = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    std::size_t hits = 0;
    for (std::int64_t a = -20; a <= 20; ++a) {
      if (a == 0) continue;
      hits += reference::brute_force_degrees(TracePair(101, a), 2, n_hi).size();
    }
    benchmark::DoNotOptimize(hits);
  }
}
BENCHMARK(BM_BruteForce)->Arg(300)->Arg(3000)->Unit(benchmark::kMillisecond);

// Same pairs, complete up to the degree cutoff (about 2.4e5 for q = 101).
void BM_Pipeline(benchmark::State& state) {
  cached_max_degree(101);
  for (auto _ : state) {
    std::size_t hits = 0;
    for (std::int64_t a = -20; a <= 20; ++a) {
      if (a == 0) continue;
      hits += ordinary_degrees(TracePair(101, a)).size();
    }
    benchmark::DoNotOptimize(hits);
  }
}
BENCHMARK(BM_Pipeline)->Unit(benchmark::kMillisecond);

void BM_Enumerate(benchmark::State& state) {
  SearchConfig cfg;
  cfg.q_min = 2;
  cfg.q_max = 3000;
  cfg.parallelism = static_cast<unsigned>(state.range(0));
  for (std::int64_t q = cfg.q_min; q <= cfg.q_max; ++q) cached_max_degree(q);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_triples(cfg).size());
  }
}
BENCHMARK(BM_Enumerate)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_SoomroFamily(benchmark::State& state) {
  const auto jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(soomro_family(3000, jobs).size());
  }
}
BENCHMARK(BM_SoomroFamily)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
