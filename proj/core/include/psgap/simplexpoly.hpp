#pragma once

#include <gmpxx.h>

#include <map>
#include <span>
#include <vector>

namespace psgap {

/// Dense multivariate polynomial with exact rational coefficients.
/// Small-degree symbolic workhorse: derivatives, simplex integrals and the
/// corner transform are all exact.
class DensePoly {
 public:
  using Expo = std::vector<unsigned>;

  explicit DensePoly(int nvars = 0) : nvars_(nvars) {}
  static DensePoly constant(int nvars, const mpq_class& c);
  static DensePoly variable(int nvars, int i);

  int nvars() const { return nvars_; }
  const std::map<Expo, mpq_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned total_degree() const;

  void add_term(const Expo& e, const mpq_class& c);

  DensePoly operator+(const DensePoly& o) const;
  DensePoly operator-(const DensePoly& o) const;
  DensePoly operator*(const DensePoly& o) const;
  bool operator==(const DensePoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }
  DensePoly scaled(const mpq_class& c) const;
  DensePoly pow(unsigned k) const;

  DensePoly derivative(int var) const;
  /// d^n/dt_0...dt_{n-1}
  DensePoly mixed_partial_all() const;

  double eval(std::span<const double> t) const;
  mpq_class eval_mpq(const std::vector<mpq_class>& t) const;

  /// Exact integral over the unit simplex {t_i >= 0, sum t_i <= 1}.
  mpq_class integrate_simplex() const;

  /// G(t_1..t_{n-1}) = int_0^{1 - sum t_i} P(t_0, t_1..) dt_0.
  DensePoly integrate_first_var() const;

  /// f(t) = int_{s >= 0, sum(t+s) <= 1} P(t+s) ds. The mixed partial of the
  /// result is (-1)^nvars * P.
  DensePoly corner_transform() const;

  /// Invariant under all variable permutations.
  bool is_symmetric() const;

 private:
  int nvars_;
  std::map<Expo, mpq_class> terms_;
};

/// (1 - t_0 - ... - t_{n-1})^m, cached expansion.
DensePoly one_minus_sum_pow(int nvars, unsigned m);

/// Symmetric polynomial with simplex support semantics: evaluations clamp
/// to 0 outside {t_i >= 0, sum t_i <= 1}.
struct SimplexPoly {
  DensePoly poly;

  int nvars() const { return poly.nvars(); }
  double operator()(std::span<const double> t) const;
};

}  // namespace psgap
