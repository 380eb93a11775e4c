#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

namespace psgap {

/// Integer partition, parts sorted descending, no zero parts.
using Partition = std::vector<unsigned>;

/// Symmetric polynomial over k variables in the monomial-symmetric basis.
/// Supports exactly what the form assembly needs: multiplication by power
/// sums p_s and exact simplex integration; scales to a hundred variables
/// because only partitions are stored.
class MonomialSym {
 public:
  explicit MonomialSym(int k);
  static MonomialSym one(int k);
  /// power-sum product P1^a P2^b
  static MonomialSym power_product(int k, unsigned a, unsigned b);

  int k() const { return k_; }
  const std::map<Partition, mpq_class>& terms() const { return terms_; }

  void mul_power_sum(unsigned s);
  mpq_class integrate_simplex() const;

 private:
  int k_;
  std::map<Partition, mpq_class> terms_;
};

/// Exact int_simplex prod t_i^{a_i} dt over k variables:
/// prod a_i! / (k + sum a_i)!.
mpq_class simplex_moment(int k, const std::vector<unsigned>& exps);

}  // namespace psgap
