#include <benchmark/benchmark.h>

#include "psgap/cluster.hpp"
#include "psgap/powerfloor.hpp"
#include "psgap/primes.hpp"
#include "psgap/psprimes.hpp"

using namespace psgap;

namespace {

const Exponent c11 = validate_exponent(11, 10);

void BM_PowFloor(benchmark::State& state) {
  std::uint64_t n = 1000000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pow_floor(n, 11, 10).value);
    if (++n > 2000000) n = 1000000;
  }
}
BENCHMARK(BM_PowFloor);

void BM_FloorCnPow(benchmark::State& state) {
  std::uint64_t n = 1000000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(floor_c_n_pow(n, c11).value);
    if (++n > 2000000) n = 1000000;
  }
}
BENCHMARK(BM_FloorCnPow);

void BM_SieveSegment(benchmark::State& state) {
  const std::uint64_t span = state.range(0);
  std::uint64_t lo = 100000000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sieve_segment(lo, lo + span));
    lo += span;
  }
  state.SetItemsProcessed(state.iterations() * span);
}
BENCHMARK(BM_SieveSegment)->Arg(1 << 20)->Arg(1 << 22);

void BM_EnumeratePs(benchmark::State& state) {
  std::uint64_t lo = 1000000;
  for (auto _ : state) {
    std::uint64_t count = 0;
    enumerate_ps(lo, lo + 10000, c11,
                 [&](const PSElement&) { ++count; });
    benchmark::DoNotOptimize(count);
    lo += 10000;
  }
}
BENCHMARK(BM_EnumeratePs);

void BM_WindowCertificate(benchmark::State& state) {
  SieveConfig cfg = derive_config(c11, 5, 1, 1000000);
  std::uint64_t n = 1470000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(window_certificate(n, cfg));
    if (++n > 1490000) n = 1470000;
  }
}
BENCHMARK(BM_WindowCertificate);

void BM_ScanClusters(benchmark::State& state) {
  for (auto _ : state) {
    auto recs = scan_clusters_vec(c11, 10, 500000, 520000, 2);
    benchmark::DoNotOptimize(recs.size());
  }
}
BENCHMARK(BM_ScanClusters);

}  // namespace

BENCHMARK_MAIN();
