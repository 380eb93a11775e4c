#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "psgap/params.hpp"
#include "psgap/powerfloor.hpp"

namespace psgap {

/// One member m = [n^c] of N^c with its minimal preimage.
struct PSElement {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  double frac_m_gamma_lo = 0.0;  // enclosure of {m^gamma}
  double frac_m_gamma_hi = 0.0;
};

/// Certified fractional-part window facts for one n.
struct WindowCertificate {
  Cert frac_n_gamma_in_range = Cert::False;  // 1-(d0/4)X^(g-1) > {n^g} > 1-4 d0 X^(g-1)
  Cert frac_c_window = Cert::False;          // eta0 < {c n^(1-g)} < 2 eta0
  bool certified() const {
    return frac_n_gamma_in_range == Cert::True && frac_c_window == Cert::True;
  }
  bool unresolved() const {
    return frac_n_gamma_in_range == Cert::Unresolved ||
           frac_c_window == Cert::Unresolved;
  }
};

/// Is m of the form [n^c]? Cross-checks the floor-difference route against
/// the minimal-preimage route; disagreement throws InvariantError.
bool is_ps_member(std::uint64_t m, const Exponent& c);

/// Members of N^c in [X1, X2] in increasing order with minimal preimages.
void enumerate_ps(std::uint64_t X1, std::uint64_t X2, const Exponent& c,
                  const std::function<void(const PSElement&)>& yield);
std::vector<PSElement> enumerate_ps_vec(std::uint64_t X1, std::uint64_t X2,
                                        const Exponent& c);

/// Shift map: [([n^gamma] + h + 1)^c].
std::uint64_t shift_map(std::uint64_t n, long long h, const Exponent& c);

WindowCertificate window_certificate(std::uint64_t n, const SieveConfig& cfg);

/// Boundary constants of the two hypothesis windows (exact edge forms).
struct WindowEdges {
  WindowEdge g_lo, g_hi;   // on {n^gamma}
  WindowEdge c_lo, c_hi;   // on {c n^(1-gamma)}
};
WindowEdges hypothesis_windows(const SieveConfig& cfg);

struct IdentityReport {
  std::uint64_t window_certified = 0;  // n passing both windows
  std::uint64_t checked = 0;           // (n, h) identity checks
  std::uint64_t failures = 0;
  std::uint64_t unresolved = 0;        // window certificates unresolved
  std::uint64_t split_checked = 0;     // secondary two-branch floor tally
  std::uint64_t split_failures = 0;
  std::uint64_t split_unresolved = 0;
  std::uint64_t member_failures = 0;   // certified n that are not members
  void merge(const IdentityReport& o);
};

/// For every window-certified n in [lo, hi] and |h| <= k0, checks
/// shift_map(n, h) == n + h*[c n^(1-gamma)], plus the two-branch floor
/// variant and membership of n as secondary tallies.
IdentityReport verify_shift_identity(const SieveConfig& cfg, std::uint64_t lo,
                                     std::uint64_t hi);

struct CompositionReport {
  std::uint64_t members = 0;
  std::uint64_t qualifying = 0;  // (n, h) pairs with positive bump weights
  std::uint64_t checked = 0;     // (n, h, h*) composition checks
  std::uint64_t failures = 0;
  std::uint64_t frac_conclusion_failures = 0;  // {n^g} >= 1-2 d0 X^(g-1)
  std::uint64_t unresolved = 0;
  double max_frac_deviation = 0.0;  // |{c n^(1-g)} - {c s_h(n)^(1-g)}|
  void merge(const CompositionReport& o);
};

/// For n in N^c in [lo, hi] and 1 <= h, h* <= k0 with the two bump-positivity
/// hypotheses certified, checks s_{h*}(n) == s_{h*-h}(s_h(n)) and the two
/// fractional conclusions.
CompositionReport verify_shift_composition(const SieveConfig& cfg,
                                           std::uint64_t lo, std::uint64_t hi);

struct DensityReport {
  std::uint64_t x = 0;
  std::uint64_t count = 0;   // primes in N^c up to x
  double main_term = 0.0;    // x^gamma / log x
  double ratio = 0.0;
};

/// Exact count of primes in N^c up to x against the density main term.
DensityReport density_report(std::uint64_t x, const Exponent& c,
                             int threads = 1);

}  // namespace psgap
