#pragma once

#include <cstdint>
#include <vector>

namespace psgap {

/// Primality bitmask for [lo, hi).
struct PrimeSegment {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::vector<std::uint64_t> bits;

  bool is_prime(std::uint64_t n) const {
    std::uint64_t i = n - lo;
    return (bits[i >> 6] >> (i & 63)) & 1;
  }
};

/// Exact primality for [lo, hi). Throws InputError on an empty range and
/// BudgetError when hi - lo exceeds max_span (default 1<<26).
PrimeSegment sieve_segment(std::uint64_t lo, std::uint64_t hi,
                           std::uint64_t max_span = std::uint64_t(1) << 26);

/// Deterministic Miller-Rabin for 64-bit n; the independent re-check path.
bool is_prime_u64(std::uint64_t n);

/// varpi(n) = log n for prime n, else 0.
double varpi(std::uint64_t n);

/// von Mangoldt: log p when n = p^k, else 0.
double lambda_vm(std::uint64_t n);

/// Lambda(n) for all n in [lo, hi), sieve-backed.
std::vector<double> lambda_table(std::uint64_t lo, std::uint64_t hi);

/// varpi(n) for all n in [lo, hi), sieve-backed.
std::vector<double> varpi_table(std::uint64_t lo, std::uint64_t hi);

struct ProgressionSum {
  double sum = 0.0;
  std::uint64_t terms = 0;
  bool gcd_warning = false;  // gcd(b, W) > 1
};

/// Sum of varpi(n) over X <= n <= 2X with n = b (mod W).
ProgressionSum progression_weight_sum(std::uint64_t X, std::uint64_t W,
                                      std::uint64_t b, int threads = 1);

/// Primes <= limit, cached ascending.
const std::vector<std::uint32_t>& small_primes(std::uint32_t limit);

/// Moebius function values for 0..limit (mu[0] unused).
std::vector<std::int8_t> mobius_table(std::uint32_t limit);

/// Forward-moving primality oracle for nondecreasing query sequences;
/// sieves value-space segments on demand.
class PrimeWindow {
 public:
  explicit PrimeWindow(std::uint64_t segment_size = std::uint64_t(1) << 22)
      : segment_size_(segment_size) {}
  bool is_prime(std::uint64_t n);

 private:
  std::uint64_t segment_size_;
  PrimeSegment seg_;
};

}  // namespace psgap
