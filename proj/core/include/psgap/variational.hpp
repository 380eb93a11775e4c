#pragma once

#include <gmpxx.h>

#include <vector>

#include "psgap/simplexpoly.hpp"
#include "psgap/symfun.hpp"

namespace psgap {

/// Basis element P1^a P2^b in the power sums P1 = sum t_i, P2 = sum t_i^2.
struct BasisElement {
  unsigned a = 0;
  unsigned b = 0;
};

/// Exact Gram forms over the pruned symmetric basis:
///   I[i][j] = int_simplex B_i B_j,
///   J[i][j] = int_{simplex, k-1} (int_0^{1-S} B_i dt_0)(int_0^{1-S} B_j dt_0).
struct Forms {
  int k = 1;
  int degree = 0;
  std::vector<BasisElement> basis;  // after dependence pruning
  std::vector<std::vector<mpq_class>> I;
  std::vector<std::vector<mpq_class>> J;
};

Forms build_forms(int k, int degree);

struct RatioSolution {
  int k = 1;
  int degree = 0;
  double ratio = 0.0;     // k * J(F)/I(F) at the optimum
  double residual = 0.0;  // eigen-equation residual on the normalized pencil
  std::vector<BasisElement> basis;
  std::vector<double> coeffs;  // F = sum coeffs[i] * P1^a P2^b
};

/// Largest generalized eigenvalue of the (J, I) pencil, scaled by k.
/// Basis: symmetric polynomials in P1, P2 of total degree <= degree.
RatioSolution solve_ratio(int k, int degree);

/// Rayleigh quotient k * vJv/vIv of an arbitrary coefficient vector.
double rayleigh_quotient(const Forms& f, const std::vector<double>& v);

/// F as a dense exact polynomial over k variables (k small).
DensePoly basis_to_dense(int k, const std::vector<BasisElement>& basis,
                         const std::vector<double>& coeffs);

/// Antiderivative export: f with d^k f / dt_0..dt_{k-1} = (-1)^k F and
/// f = 0 on and outside the simplex boundary. Exactness of the mixed-partial
/// recovery is asserted internally. Limited to k <= 8 variables.
SimplexPoly export_f(const RatioSolution& sol);
SimplexPoly export_f(const DensePoly& F);

/// Threshold (1/2) log k0 + (1/2) log log k0 - 2 used as the desk-scale
/// lower-bound target for k = k0 + 1.
double mk_bound(int k0);

}  // namespace psgap
