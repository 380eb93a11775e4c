#include "psgap/symfun.hpp"

#include <algorithm>
#include <numeric>

#include "psgap/errors.hpp"

namespace psgap {

namespace {

mpz_class factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

Partition sorted_desc(Partition p) {
  std::sort(p.begin(), p.end(), std::greater<unsigned>());
  return p;
}

// coefficient of m_mu in p_s * m_lambda: positions in a mu-monomial whose
// part, reduced by s, reproduces lambda
mpq_class overlay_coeff(const Partition& mu, const Partition& lambda,
                        unsigned s) {
  mpq_class c = 0;
  std::map<unsigned, unsigned> mult;
  for (unsigned w : mu) ++mult[w];
  for (const auto& [w, m] : mult) {
    if (w < s) continue;
    Partition cand;
    cand.reserve(mu.size());
    bool removed = false;
    for (unsigned x : mu) {
      if (!removed && x == w) {
        removed = true;
        if (w > s) cand.push_back(w - s);
        continue;
      }
      cand.push_back(x);
    }
    if (sorted_desc(cand) == lambda) c += static_cast<long>(m);
  }
  return c;
}

}  // namespace

MonomialSym::MonomialSym(int k) : k_(k) {
  if (k < 0) throw InputError("MonomialSym: k must be nonnegative");
}

MonomialSym MonomialSym::one(int k) {
  MonomialSym s(k);
  s.terms_[Partition{}] = 1;
  return s;
}

void MonomialSym::mul_power_sum(unsigned s) {
  if (s == 0) throw InputError("mul_power_sum: s must be positive");
  std::map<Partition, mpq_class> out;
  for (const auto& [lam, c] : terms_) {
    // candidate partitions: append s, or add s to one distinct part value
    std::vector<Partition> cands;
    if (static_cast<int>(lam.size()) + 1 <= k_) {
      Partition mu = lam;
      mu.push_back(s);
      cands.push_back(sorted_desc(mu));
    }
    std::map<unsigned, bool> seen;
    for (std::size_t i = 0; i < lam.size(); ++i) {
      if (seen[lam[i]]) continue;
      seen[lam[i]] = true;
      Partition mu = lam;
      mu[i] += s;
      cands.push_back(sorted_desc(mu));
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (const auto& mu : cands) {
      mpq_class w = overlay_coeff(mu, lam, s);
      if (w != 0) out[mu] += c * w;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second == 0)
      it = out.erase(it);
    else
      ++it;
  }
  terms_ = std::move(out);
}

MonomialSym MonomialSym::power_product(int k, unsigned a, unsigned b) {
  MonomialSym s = one(k);
  for (unsigned i = 0; i < a; ++i) s.mul_power_sum(1);
  for (unsigned i = 0; i < b; ++i) s.mul_power_sum(2);
  return s;
}

mpq_class MonomialSym::integrate_simplex() const {
  mpq_class acc = 0;
  for (const auto& [lam, c] : terms_) {
    const unsigned len = static_cast<unsigned>(lam.size());
    if (static_cast<int>(len) > k_) continue;
    unsigned tot = std::accumulate(lam.begin(), lam.end(), 0u);
    // number of distinct monomials: k(k-1)...(k-len+1)/prod mult_v!
    mpz_class count = 1;
    for (unsigned i = 0; i < len; ++i) count *= (k_ - static_cast<long>(i));
    std::map<unsigned, unsigned> mult;
    for (unsigned w : lam) ++mult[w];
    for (const auto& [w, m] : mult) count /= factorial(m);
    mpz_class num = count;
    for (unsigned w : lam) num *= factorial(w);
    acc += c * mpq_class(num) / mpq_class(factorial(k_ + tot));
  }
  return acc;
}

mpq_class simplex_moment(int k, const std::vector<unsigned>& exps) {
  if (static_cast<int>(exps.size()) != k)
    throw InputError("simplex_moment: arity mismatch");
  mpz_class num = 1;
  unsigned tot = 0;
  for (unsigned a : exps) {
    num *= factorial(a);
    tot += a;
  }
  return mpq_class(num) / mpq_class(factorial(k + tot));
}

}  // namespace psgap
