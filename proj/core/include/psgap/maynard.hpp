#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "psgap/params.hpp"
#include "psgap/simplexpoly.hpp"

namespace psgap {

/// Sieve weights lambda(d) = f(log d_0/log R, ...) prod mu(d_i), supported
/// on squarefree tuples with product <= R and entries coprime to W.
class WeightGenerator {
 public:
  WeightGenerator(SimplexPoly f, double R, int k0, std::uint64_t W = 1);

  double lambda(std::span<const std::uint32_t> d) const;
  const SimplexPoly& f() const { return f_; }
  double R() const { return R_; }
  int k0() const { return k0_; }
  std::uint64_t W() const { return W_; }
  int mobius(std::uint32_t d) const { return mobius_[d]; }

 private:
  SimplexPoly f_;
  double R_;
  int k0_;
  std::uint64_t W_;
  double log_R_;
  std::vector<std::int8_t> mobius_;
};

/// All squarefree tuples (d_0..d_k0) with product <= R and gcd(d_i, W) = 1,
/// lexicographic order, duplicate-free.
std::vector<std::vector<std::uint32_t>> tuple_family(double R, std::uint64_t W,
                                                     int k0);

struct LemmaCheck {
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;
  std::uint64_t pairs_enumerated = 0;
  std::uint64_t pairs_coprime = 0;
};

/// Direct evaluation of the quadratic weight sum
///   sum_{d, e : W, [d_0,e_0], .., [d_k0,e_k0] pairwise coprime}
///     lambda_d lambda_e / prod [d_i, e_i]
/// against its main term (W/phi(W))^(k0+1) (log R)^-(k0+1) int F^2.
LemmaCheck sieve_sum_bruteforce(const WeightGenerator& gen,
                                std::uint64_t pair_budget = 100000000);

/// One tuple pair classified by q = prod of primes shared between
/// coordinate lcms.
struct XqClass {
  std::uint64_t q = 1;
  std::vector<std::uint64_t> reduced_lcms;  // [d_j,e_j] / (q, [d_j,e_j])
  bool certificate_ok = true;  // W, q, reduced lcms pairwise coprime
};
XqClass xq_classify(std::span<const std::uint32_t> d,
                    std::span<const std::uint32_t> e, std::uint64_t W);

struct XqSummary {
  std::uint64_t pairs = 0;
  std::uint64_t certificate_violations = 0;
  std::uint64_t q_above_r2 = 0;
  std::map<std::uint64_t, std::uint64_t> class_sizes;
  std::map<std::uint64_t, double> mass;  // sum |ll'| / (q^2 prod reduced)
};

/// Classify `npairs` pseudorandom tuple pairs; the partition property
/// (every pair lands in exactly one class) holds by construction and the
/// summary exposes the per-q tallies.
XqSummary xq_partition_sample(const WeightGenerator& gen, std::uint64_t npairs,
                              std::uint64_t seed);

struct PropSum {
  double value = 0;
  double main_term = 0;
  double ratio = 0;
  std::uint64_t terms = 0;  // members n that passed the congruence filter
};

/// Desk-scale weighted sum over n in N^c, n ~ X with the shift-h prime
/// weight: varpi(s_h(n)) chi(s_h^g) psi(c s_h^(1-g)) (sum lambda)^2.
/// main_term is the per-h share of the asymptotic constant.
PropSum weighted_prime_window_sum(const SieveConfig& cfg,
                                  const WeightGenerator& gen, int h);

/// Desk-scale upper-bound sum with chi*(n^g) psi*(c n^(1-g)) weights.
PropSum weighted_membership_sum(const SieveConfig& cfg,
                                const WeightGenerator& gen);

struct CombinedSum {
  double value = 0;
  bool positive = false;
  std::uint64_t terms = 0;
};

/// sum_n w_n ( sum_h varpi chi psi - m chi* psi* log 3X ), sign reported.
CombinedSum combined_positivity_sum(const SieveConfig& cfg,
                                    const WeightGenerator& gen, int m);

}  // namespace psgap
