#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "psgap/params.hpp"

namespace psgap {

/// A window n..n+k0 whose floor-power values contain primes.
struct ClusterRecord {
  std::uint64_t n = 0;
  Exponent c;
  int k0 = 0;
  std::vector<int> prime_offsets;       // i with [(n+i)^c] prime
  std::vector<std::uint64_t> values;    // the prime values, increasing
  bool in_progression = false;          // window values form an AP
  double normalized_span = 0.0;         // (max-min)/min^(1-gamma)
};

/// Every window start n in [n_lo, n_hi] with at least min_primes primes
/// among [(n+i)^c], 0 <= i <= k0. Consecutive windows carrying the same
/// prime multiset are deduplicated. Work budget: n_hi <= 1e8/(k0+1).
void scan_clusters(const Exponent& c, int k0, std::uint64_t n_lo,
                   std::uint64_t n_hi, int min_primes,
                   const std::function<void(const ClusterRecord&)>& yield,
                   int threads = 1);
std::vector<ClusterRecord> scan_clusters_vec(const Exponent& c, int k0,
                                             std::uint64_t n_lo,
                                             std::uint64_t n_hi,
                                             int min_primes, int threads = 1);

struct GapRecord {
  std::uint64_t p = 0;
  std::uint64_t p_next = 0;
  double normalized_gap = 0.0;  // (p_next - p) / p^(1-gamma)
};

struct GapStats {
  std::vector<GapRecord> records;
  double tau = 0.0;
  std::uint64_t below_tau = 0;
  std::uint64_t lower_bound_violations = 0;  // gap < c - p^(gamma-1)
};

/// Consecutive prime pairs in N^c up to x_max with normalized gaps.
/// tau <= 0 selects the default threshold 2c.
GapStats gap_stats(const Exponent& c, std::uint64_t x_max, double tau = -1.0,
                   int threads = 1);

struct WitnessResult {
  bool found = false;
  ClusterRecord record;
  std::uint64_t scanned_to = 0;
  std::uint64_t shift_mismatches = 0;  // shift-map consistency failures
  std::uint64_t shift_checked = 0;
};

/// Scan increasing ranges for a window with >= m+1 primes, starting at
/// n_start, stopping at the work budget. A miss is a result, not an error.
WitnessResult witness_search(const SieveConfig& cfg, int m,
                              std::uint64_t n_start = 2,
                              std::uint64_t budget = 100000000);

}  // namespace psgap
