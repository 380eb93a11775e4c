#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "psgap/params.hpp"

namespace psgap {

/// Phase x -> j x^gamma + C1 x + C2 x^(1-gamma), evaluated mod 1 through
/// the certified floor/fraction decompositions so that large arguments do
/// not lose the fractional part.
struct PhaseFamily {
  double j = 0;
  double C1 = 0;
  double C2 = 0;
  Exponent c;

  /// phase value reduced to [0, 1)
  double eval_mod1(std::uint64_t x) const;
  /// conservative per-term rounding bound for eval_mod1
  double per_term_error(std::uint64_t x_max) const;
};

struct ExpSumResult {
  std::complex<double> value;
  double trivial = 0;  // sum of |weights|
  double ratio = 0;    // |value| / trivial
  std::uint64_t terms = 0;
};

/// sum_{X <= n <= 2X} Lambda(n) e(phase(n)). Throws PrecisionError when the
/// per-term phase error bound exceeds 1e-6.
ExpSumResult lambda_exp_sum(std::uint64_t X, const PhaseFamily& phase,
                            int threads = 1);

struct VdcResult {
  std::complex<double> sum;
  double bound = 0;  // Y sqrt(Delta) + 1/sqrt(Delta)
  double K = 0;      // |sum| / bound
  bool pass = false; // K <= 10
};

/// Exponential sum against the second-derivative-test envelope. The caller
/// certifies Delta <= |f''| <= 4 Delta; it is spot-checked on 1000 samples
/// with slack [Delta/4, 4 Delta] and violations are rejected as InputError.
VdcResult vdc_check(const std::function<double(double)>& f,
                    const std::function<double(double)>& fdd, double X,
                    double Y, double Delta);

/// Alternating-binomial decomposition of Lambda truncated at
/// ceil(n_max^(1/J)); returns the maximum absolute deviation from Lambda(n)
/// over n <= n_max. J in {1, 2, 3}.
double heath_brown_check(std::uint64_t n_max, int J);

enum class CoefKind { One, Mu, Log };

/// sum_{m ~ M, mn in [X, 2X]} a_m b_n e(phase(mn)).
ExpSumResult bilinear_sum(std::uint64_t M, std::uint64_t X, CoefKind a_kind,
                          CoefKind b_kind, const PhaseFamily& phase,
                          int threads = 1);

struct Theta2Check {
  mpq_class theta2;
  mpq_class norm;        // distance to the nearest integer
  mpq_class bound;       // 1/(W prod moduli)
  bool pass = false;     // norm >= bound, exact
  bool degenerate = false;  // theta2 integral with nonzero residues
};

/// theta2 = r0/W + sum_i r_i * i / m_i with pairwise coprime moduli
/// (indices i = 1..k0). Exact rational arithmetic throughout; all-zero
/// residues are rejected.
Theta2Check theta2_lower_check(std::uint64_t W,
                               const std::vector<std::uint64_t>& moduli,
                               std::uint64_t r0,
                               const std::vector<std::uint64_t>& residues);

}  // namespace psgap
