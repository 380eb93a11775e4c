#include "psgap/simplexpoly.hpp"

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

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace

DensePoly DensePoly::constant(int nvars, const mpq_class& c) {
  DensePoly p(nvars);
  if (c != 0) p.terms_[Expo(nvars, 0)] = c;
  return p;
}

DensePoly DensePoly::variable(int nvars, int i) {
  if (i < 0 || i >= nvars) throw InputError("DensePoly: variable out of range");
  DensePoly p(nvars);
  Expo e(nvars, 0);
  e[i] = 1;
  p.terms_[e] = 1;
  return p;
}

unsigned DensePoly::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_)
    d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
  return d;
}

void DensePoly::add_term(const Expo& e, const mpq_class& c) {
  if (static_cast<int>(e.size()) != nvars_)
    throw InputError("DensePoly: exponent arity mismatch");
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (c != 0) terms_[e] = c;
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

DensePoly DensePoly::operator+(const DensePoly& o) const {
  if (nvars_ != o.nvars_) throw InputError("DensePoly: arity mismatch");
  DensePoly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

DensePoly DensePoly::operator-(const DensePoly& o) const {
  if (nvars_ != o.nvars_) throw InputError("DensePoly: arity mismatch");
  DensePoly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
  return out;
}

DensePoly DensePoly::operator*(const DensePoly& o) const {
  if (nvars_ != o.nvars_) throw InputError("DensePoly: arity mismatch");
  DensePoly out(nvars_);
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      Expo e(nvars_);
      for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
      out.add_term(e, c1 * c2);
    }
  }
  return out;
}

DensePoly DensePoly::scaled(const mpq_class& c) const {
  DensePoly out(nvars_);
  if (c == 0) return out;
  for (const auto& [e, v] : terms_) out.terms_[e] = v * c;
  return out;
}

DensePoly DensePoly::pow(unsigned k) const {
  DensePoly out = constant(nvars_, 1);
  for (unsigned i = 0; i < k; ++i) out = out * (*this);
  return out;
}

DensePoly DensePoly::derivative(int var) const {
  DensePoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Expo d = e;
    d[var] -= 1;
    out.add_term(d, c * static_cast<long>(e[var]));
  }
  return out;
}

DensePoly DensePoly::mixed_partial_all() const {
  DensePoly out = *this;
  for (int i = 0; i < nvars_; ++i) out = out.derivative(i);
  return out;
}

double DensePoly::eval(std::span<const double> t) const {
  double acc = 0;
  for (const auto& [e, c] : terms_) {
    double m = c.get_d();
    for (int i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) m *= t[i];
    acc += m;
  }
  return acc;
}

mpq_class DensePoly::eval_mpq(const std::vector<mpq_class>& t) const {
  mpq_class acc = 0;
  for (const auto& [e, c] : terms_) {
    mpq_class m = c;
    for (int i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) m *= t[i];
    acc += m;
  }
  return acc;
}

mpq_class DensePoly::integrate_simplex() const {
  // int prod t^e dt = prod e_i! / (n + sum e)!
  mpq_class acc = 0;
  for (const auto& [e, c] : terms_) {
    unsigned tot = std::accumulate(e.begin(), e.end(), 0u);
    mpz_class num = 1;
    for (unsigned ei : e) num *= factorial(ei);
    acc += c * mpq_class(num) / mpq_class(factorial(nvars_ + tot));
  }
  return acc;
}

DensePoly one_minus_sum_pow(int nvars, unsigned m) {
  DensePoly base = DensePoly::constant(nvars, 1);
  for (int i = 0; i < nvars; ++i)
    base = base - DensePoly::variable(nvars, i);
  return base.pow(m);
}

DensePoly DensePoly::integrate_first_var() const {
  if (nvars_ < 1) throw InputError("integrate_first_var: no variables");
  const int m = nvars_ - 1;
  DensePoly out(m);
  // antiderivative in t_0 evaluated at 1 - sum of the rest (0 at t_0 = 0)
  std::map<unsigned, DensePoly> pow_cache;
  for (const auto& [e, c] : terms_) {
    unsigned e0 = e[0];
    Expo rest(e.begin() + 1, e.end());
    DensePoly mono(m);
    mono.add_term(rest, c / mpq_class(static_cast<long>(e0 + 1)));
    auto it = pow_cache.find(e0 + 1);
    if (it == pow_cache.end())
      it = pow_cache.emplace(e0 + 1, one_minus_sum_pow(m, e0 + 1)).first;
    out = out + mono * it->second;
  }
  return out;
}

DensePoly DensePoly::corner_transform() const {
  const int n = nvars_;
  // P(t+s) integrated over s in the scaled simplex of size rho = 1 - sum t:
  // each s-monomial s^b contributes rho^(n+|b|) prod b_i! / (n+|b|)!
  using Key = std::pair<Expo, unsigned>;  // (t-monomial, |b|)
  std::map<Key, mpq_class> acc;
  for (const auto& [e, c] : terms_) {
    // enumerate componentwise splits j <= e; t gets j, s gets e - j
    Expo j(n, 0);
    for (;;) {
      unsigned B = 0;
      mpq_class w = c;
      for (int i = 0; i < n; ++i) {
        w *= mpq_class(binomial(e[i], j[i]) * factorial(e[i] - j[i]));
        B += e[i] - j[i];
      }
      acc[{j, B}] += w;
      int i = 0;
      for (; i < n; ++i) {
        if (j[i] < e[i]) {
          ++j[i];
          break;
        }
        j[i] = 0;
      }
      if (i == n) break;
    }
  }
  DensePoly out(n);
  std::map<unsigned, DensePoly> pow_cache;
  for (const auto& [key, w] : acc) {
    const auto& [j, B] = key;
    mpq_class coeff = w / mpq_class(factorial(n + B));
    DensePoly mono(n);
    mono.add_term(j, coeff);
    auto it = pow_cache.find(n + B);
    if (it == pow_cache.end())
      it = pow_cache.emplace(n + B, one_minus_sum_pow(n, n + B)).first;
    out = out + mono * it->second;
  }
  return out;
}

bool DensePoly::is_symmetric() const {
  for (int i = 0; i + 1 < nvars_; ++i) {
    for (const auto& [e, c] : terms_) {
      Expo s = e;
      std::swap(s[i], s[i + 1]);
      auto it = terms_.find(s);
      if (it == terms_.end() || it->second != c) return false;
    }
  }
  return true;
}

double SimplexPoly::operator()(std::span<const double> t) const {
  double sum = 0;
  for (double v : t) {
    if (v < 0) return 0.0;
    sum += v;
  }
  if (sum >= 1.0) return 0.0;
  return poly.eval(t);
}

}  // namespace psgap
