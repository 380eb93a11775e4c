#include "psgap/cluster.hpp"

#include <cmath>
#include <set>

#include "doctest.h"
#include "psgap/errors.hpp"
#include "psgap/powerfloor.hpp"
#include "psgap/primes.hpp"
#include "psgap/psprimes.hpp"

using namespace psgap;

namespace {
const Exponent c11 = validate_exponent(11, 10);

// brute-force window scan over a subrange, no dedup
std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> brute_windows(
    int k0, std::uint64_t lo, std::uint64_t hi, int min_primes) {
  std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> out;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    std::vector<std::uint64_t> primes;
    for (int i = 0; i <= k0; ++i) {
      std::uint64_t v = pow_floor(n + i, 11, 10).value;
      if (is_prime_u64(v)) primes.push_back(v);
    }
    if (static_cast<int>(primes.size()) >= min_primes)
      out.push_back({n, primes});
  }
  return out;
}

}  // namespace

TEST_CASE("k0 = 0 records are exactly the PS primes") {
  auto recs = scan_clusters_vec(c11, 0, 1, 3000, 1);
  std::set<std::uint64_t> got;
  for (const auto& r : recs) {
    REQUIRE(r.values.size() == 1);
    got.insert(r.values[0]);
    CHECK(r.prime_offsets == std::vector<int>{0});
  }
  std::set<std::uint64_t> expect;
  enumerate_ps(1, pow_floor(3000, 11, 10).value, c11, [&](const PSElement& e) {
    if (is_prime_u64(e.m)) expect.insert(e.m);
  });
  CHECK(got == expect);
}

TEST_CASE("scan_clusters never misses a brute-force window") {
  const int k0 = 10;
  auto recs = scan_clusters_vec(c11, k0, 100000, 110000, 2);
  auto brute = brute_windows(k0, 100000, 110000, 2);
  // dedup drops consecutive repeats of the same prime multiset, so every
  // brute window's multiset must appear among the scanned records
  std::set<std::vector<std::uint64_t>> scanned;
  for (const auto& r : recs) scanned.insert(r.values);
  for (const auto& [n, primes] : brute) {
    CHECK(scanned.count(primes) == 1);
  }
  // emitted records re-verify prime
  for (const auto& r : recs)
    for (std::uint64_t v : r.values) CHECK(is_prime_u64(v));
}

TEST_CASE("dedup: consecutive windows with identical prime sets collapse") {
  auto recs = scan_clusters_vec(c11, 10, 100000, 101000, 1);
  for (std::size_t i = 1; i < recs.size(); ++i)
    CHECK(recs[i].values != recs[i - 1].values);
}

TEST_CASE("thread-count invariance of scan output") {
  auto a = scan_clusters_vec(c11, 5, 50000, 80000, 2, 1);
  auto b = scan_clusters_vec(c11, 5, 50000, 80000, 2, 8);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].n == b[i].n);
    CHECK(a[i].values == b[i].values);
    CHECK(a[i].normalized_span == b[i].normalized_span);
  }
}

TEST_CASE("scan budget and input guards") {
  CHECK_THROWS_AS(scan_clusters_vec(c11, 10, 1, 100000000ull, 1), BudgetError);
  CHECK_THROWS_AS(scan_clusters_vec(c11, 1, 10, 5, 1), InputError);
  CHECK_THROWS_AS(scan_clusters_vec(c11, 1, 1, 10, 0), InputError);
}

TEST_CASE("gap_stats on a small range") {
  GapStats st = gap_stats(c11, 100000);
  CHECK(st.tau == doctest::Approx(2.2));
  CHECK(st.records.size() > 100);
  CHECK(st.lower_bound_violations == 0);
  // monotone in tau and in x_max
  GapStats tighter = gap_stats(c11, 100000, 1.5);
  CHECK(tighter.below_tau <= st.below_tau);
  GapStats shorter = gap_stats(c11, 50000);
  CHECK(shorter.below_tau <= st.below_tau);
  CHECK(shorter.records.size() < st.records.size());
  // consecutive-in-N^c pairs that are both prime sit near c
  std::uint64_t near_c = 0;
  for (const auto& r : st.records)
    if (r.normalized_gap < 1.3) ++near_c;
  CHECK(near_c > 0);
  // thread invariance
  GapStats t8 = gap_stats(c11, 100000, -1.0, 8);
  CHECK(t8.records.size() == st.records.size());
  CHECK(t8.below_tau == st.below_tau);
}

TEST_CASE("gap_stats empty below the first pair") {
  // no two PS primes below 3: the record list is empty
  GapStats st = gap_stats(c11, 2);
  CHECK(st.records.empty());
}

TEST_CASE("witness search: m=1 found quickly at k0=10") {
  SieveConfig cfg = derive_config(c11, 10, 1, 1000);
  WitnessResult res = witness_search(cfg, 1, 2);
  CHECK(res.found);
  CHECK(res.record.values.size() >= 2);
  CHECK(res.record.n <= 1000000);
  CHECK(res.shift_mismatches == 0);
  for (std::uint64_t v : res.record.values) CHECK(is_prime_u64(v));
}

TEST_CASE("witness search: budget exhaustion is a miss, not an error") {
  // demand 11 primes in an 11-window above the trivial zone: not found
  SieveConfig cfg = derive_config(c11, 10, 1, 1000);
  WitnessResult res = witness_search(cfg, 10, 1000, 200000);
  CHECK_FALSE(res.found);
  CHECK(res.scanned_to > 0);
}

TEST_CASE("m=0 witness is any PS prime window") {
  SieveConfig cfg = derive_config(c11, 2, 1, 1000);
  WitnessResult res = witness_search(cfg, 0, 2);
  CHECK(res.found);
  CHECK(res.record.values.size() >= 1);
}
