#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "psgap/params.hpp"
#include "psgap/powerfloor.hpp"

namespace psgap {

/// Period-1 bump specification. Endpoints are exact edge forms
/// u + v * X^((q-p)/p); Delta = delta_ratio * (beta - alpha).
struct BumpSpec {
  WindowEdge alpha;
  WindowEdge beta;
  Frac delta_ratio = Frac(1, 4);  // must satisfy 0 < ratio < 1/2
  int r = 2;
  Exponent c;          // only consulted when an edge has v != 0
  std::uint64_t X = 1000;
  WindowEdge shift;    // evaluate at {x - shift}; zero for plain bumps

  static BumpSpec plain(double alpha, double beta, double delta, int r);
};

/// Smooth period-1 cutoff: 1 on [alpha+Delta, beta-Delta], 0 outside
/// (alpha, beta), C^(r-1) ramps from an r-fold box convolution.
class BumpFunction {
 public:
  explicit BumpFunction(const BumpSpec& spec);

  double operator()(double x) const;

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double delta() const { return delta_; }
  double shift() const { return shift_; }
  double plateau_lo() const { return plat_lo_; }
  double plateau_hi() const { return plat_hi_; }
  /// a_0 = beta - alpha - Delta, the mean value.
  double a0() const { return a0_; }
  const BumpSpec& spec() const { return spec_; }

 private:
  BumpSpec spec_;
  double alpha_ = 0, beta_ = 0, delta_ = 0, shift_ = 0;
  double plat_lo_ = 0, plat_hi_ = 0, a0_ = 0;
  double inv_width_ = 0;  // 1/(beta-alpha)
  std::vector<double> brk_;                 // normalized ramp breakpoints
  std::vector<std::vector<double>> coef_;   // Horner coefficients per piece
};

struct FourierReport {
  std::vector<std::complex<double>> coeffs;  // a_j for j = 0..Jmax
  double a0_expected = 0;    // beta - alpha - Delta
  double K_r = 0;            // max_j |a_j| / envelope(j)
  std::size_t grid = 0;      // quadrature points
  double parseval_sum = 0;   // sum over |j| <= Jmax of |a_j|^2
};

/// Grid-quadrature Fourier coefficients with the decay-envelope report.
/// grid == 0 picks max(2^16, next power of two above 64*Jmax).
FourierReport bump_fourier(const BumpFunction& b, std::size_t Jmax,
                           std::size_t grid = 0);

/// Closed-form coefficient (indicator * box^r transform), for cross-checks.
std::complex<double> bump_coeff_closed_form(const BumpFunction& b, long j);

struct WindowBumps {
  BumpFunction chi;       // window on {n^gamma} near 1
  BumpFunction psi;       // window on {c n^(1-gamma)} near eta0
  BumpFunction chi_star;  // shifted variant, plateau covers [1-2d0 X^(g-1), 1]
  BumpFunction psi_star;  // wider variant, plateau covers [eta0, 2 eta0]
  int r_chi = 0;          // r actually used (after the cap)
  int r_psi = 0;
  int r_cap = 0;
};

/// The four production bumps at the configuration's scale. r is capped at
/// r_cap (the derived values 100/eps0 and 100/sigma0 are astronomically
/// large at desk scale).
WindowBumps window_bumps(const SieveConfig& cfg, int r_cap = 16);

/// Truncated Fourier expansion of e(-theta {x}).
struct SawtoothExpansion {
  double theta = 0;
  int H = 2;
  std::complex<double> c_theta;  // (1 - e(-theta)) / (2 pi i)
  double norm_theta = 0;         // distance from theta to nearest integer

  std::complex<double> truncated(double x) const;
  std::complex<double> exact(double x) const;  // e(-theta {x})
  double envelope(double x) const;  // Phi(x; H) = 1/(1 + H ||x||)
};

/// Throws InputError for integral theta or H < 2.
SawtoothExpansion sawtooth_expand(double theta, int H);

}  // namespace psgap
