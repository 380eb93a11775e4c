#pragma once

#include <cstdint>
#include <utility>

#include "psgap/params.hpp"

namespace psgap {

/// Certified floor of a rational power. `value <= n^e < value+1` is always
/// certified by big-integer comparison; the fractional enclosure brackets
/// {n^e} with width <= 2^-50 (exactly [0,0] on a perfect-power hit).
struct FloorResult {
  std::uint64_t value = 0;
  bool exact_integer_hit = false;
  double frac_lo = 0.0;
  double frac_hi = 0.0;
};

/// floor(n^(a/b)) for n >= 1, a,b >= 1. Total for valid inputs; throws
/// BudgetError when n^a exceeds the big-integer bit budget and InputError
/// when the result does not fit in 64 bits.
FloorResult pow_floor(std::uint64_t n, unsigned a, unsigned b);

/// Certified enclosure of {n^(a/b)}; (0,0) exactly on perfect powers.
std::pair<double, double> frac_pow(std::uint64_t n, unsigned a, unsigned b);

/// floor(c * n^(1-gamma)) = floor((p/q) * n^((p-q)/p)) for c = p/q.
/// Uses floor(x/q) = floor(floor(x)/q) on the exact integer p-th root of
/// p^p * n^(p-q), so the floor itself never needs escalated precision.
FloorResult floor_c_n_pow(std::uint64_t n, const Exponent& c);

/// Smallest integer v with v^b >= n^a, i.e. ceil(n^(a/b)).
std::uint64_t pow_ceil(std::uint64_t n, unsigned a, unsigned b);

/// Bit budget for intermediate big integers (default 1<<20 bits).
void set_bigint_bit_budget(std::size_t bits);
std::size_t bigint_bit_budget();

// ---------------------------------------------------------------------------
// Certified window comparisons.
//
// Quantities of interest are fractional parts of either n^(q/p) or
// (p/q) n^((p-q)/p); window endpoints have the form u + v * X^((q-p)/p)
// with small rational u, v. Comparisons are certified by directed-rounding
// enclosures at escalating precision (128 bits doubling up to the cap).
// ---------------------------------------------------------------------------

enum class Cert : int { False = 0, True = 1, Unresolved = 2 };

/// Endpoint u + v * X^((q-p)/p). v = 0 gives a plain rational endpoint.
struct WindowEdge {
  Frac u;
  Frac v;
  double approx(const Exponent& c, std::uint64_t X) const;
};

/// Correctly rounded double value of an edge (256-bit evaluation).
double edge_value(const WindowEdge& e, const Exponent& c, std::uint64_t X);

enum class FracQuantity {
  NGamma,   // {n^(q/p)}
  CNPow,    // {(p/q) n^((p-q)/p)}
};

/// Certified test of lo < {quantity(n)} < hi (open window). Returns
/// Unresolved only if the enclosures still straddle at max_bits.
Cert frac_in_open_window(std::uint64_t n, FracQuantity kind, const Exponent& c,
                         std::uint64_t X, const WindowEdge& lo,
                         const WindowEdge& hi, int max_bits);

/// Certified test of {n^(q/p)} >= edge (closed on the left).
Cert frac_at_least(std::uint64_t n, FracQuantity kind, const Exponent& c,
                   std::uint64_t X, const WindowEdge& edge, int max_bits);

/// Certified floor of (n^(q/p) + h)^(p/q) for integer h; used for the
/// two-branch floor identity tally. Throws PrecisionError at the cap.
std::uint64_t floor_shifted_root_pow(std::uint64_t n, long long h,
                                     const Exponent& c, int max_bits);

}  // namespace psgap
