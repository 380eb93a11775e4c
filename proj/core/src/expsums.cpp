#include "psgap/expsums.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "psgap/errors.hpp"
#include "psgap/parallel.hpp"
#include "psgap/powerfloor.hpp"
#include "psgap/primes.hpp"

namespace psgap {

namespace {

double mod1(double x) {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

// j * (v + frac) mod 1 with the integer part reduced exactly: split the
// product via fma, fmod the high part (exact), keep the residuals
double scaled_mod1(double j, std::uint64_t v, double frac) {
  double vd = static_cast<double>(v);
  double hi = j * vd;
  double lo = std::fma(j, vd, -hi);
  return mod1(std::fmod(hi, 1.0) + lo + j * frac);
}

std::complex<double> e2pi(double t) {
  double ang = 2.0 * M_PI * t;
  return {std::cos(ang), std::sin(ang)};
}

struct ComplexKahan {
  Kahan re, im;
  void add(const std::complex<double>& z) {
    re.add(z.real());
    im.add(z.imag());
  }
  void merge(const ComplexKahan& o) {
    re.merge(o.re);
    im.merge(o.im);
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

}  // namespace

double PhaseFamily::eval_mod1(std::uint64_t x) const {
  double acc = 0;
  if (j != 0.0) {
    FloorResult g = pow_floor(x, static_cast<unsigned>(c.q),
                              static_cast<unsigned>(c.p));
    acc += scaled_mod1(j, g.value, 0.5 * (g.frac_lo + g.frac_hi));
  }
  if (C1 != 0.0) acc += scaled_mod1(C1, x, 0.0);
  if (C2 != 0.0) {
    FloorResult s = floor_c_n_pow(x, c);
    // floor_c_n_pow returns [(p/q) x^(1-gamma)]; rescale by q/p to get
    // x^(1-gamma) itself: C2 x^(1-g) = (C2 q/p) * (p/q) x^(1-g)
    double scale = C2 * static_cast<double>(c.q) / static_cast<double>(c.p);
    acc += scaled_mod1(scale, s.value, 0.5 * (s.frac_lo + s.frac_hi));
  }
  return mod1(acc);
}

double PhaseFamily::per_term_error(std::uint64_t x_max) const {
  const double eps = std::numeric_limits<double>::epsilon();
  double err = (std::abs(j) + std::abs(C2)) * 0x1p-50;
  err += 8 * eps * (1.0 + std::abs(j) + std::abs(C2));
  err += 4 * eps * std::abs(C1) * static_cast<double>(x_max);
  // fmod residues are exact; the remaining terms are O(eps)
  return err;
}

ExpSumResult lambda_exp_sum(std::uint64_t X, const PhaseFamily& phase,
                            int threads) {
  if (X < 2) throw InputError("lambda_exp_sum: X too small");
  if (phase.per_term_error(2 * X) > 1e-6)
    throw PrecisionError("lambda_exp_sum: phase error above 1e-6", X);
  struct Part {
    ComplexKahan sum;
    Kahan trivial;
    std::uint64_t terms = 0;
  };
  auto parts = chunked_map<Part>(
      X, 2 * X + 1, std::uint64_t(1) << 20, threads,
      [&phase](std::uint64_t a, std::uint64_t b) {
        Part part;
        std::vector<double> lam = lambda_table(a, b);
        for (std::uint64_t n = a; n < b; ++n) {
          double w = lam[n - a];
          if (w == 0.0) continue;
          part.sum.add(w * e2pi(phase.eval_mod1(n)));
          part.trivial.add(w);
          ++part.terms;
        }
        return part;
      });
  ComplexKahan sum;
  Kahan trivial;
  ExpSumResult res;
  for (const auto& p : parts) {
    sum.merge(p.sum);
    trivial.merge(p.trivial);
    res.terms += p.terms;
  }
  res.value = sum.value();
  res.trivial = trivial.value();
  res.ratio = std::abs(res.value) / res.trivial;
  if (std::abs(res.value) > res.trivial + 1e-9)
    throw InvariantError("lambda_exp_sum: triangle inequality violated");
  return res;
}

VdcResult vdc_check(const std::function<double(double)>& f,
                    const std::function<double(double)>& fdd, double X,
                    double Y, double Delta) {
  if (Y < 1 || Delta <= 0) throw InputError("vdc_check: bad Y or Delta");
  for (int i = 0; i < 1000; ++i) {
    double x = X + Y * (i + 0.5) / 1000.0;
    double d = std::abs(fdd(x));
    if (d < Delta / 4 || d > 4 * Delta)
      throw InputError("vdc_check: |f''| outside [Delta/4, 4 Delta]");
  }
  ComplexKahan acc;
  for (std::uint64_t n = static_cast<std::uint64_t>(std::ceil(X));
       n <= static_cast<std::uint64_t>(std::floor(X + Y)); ++n)
    acc.add(e2pi(mod1(f(static_cast<double>(n)))));
  VdcResult res;
  res.sum = acc.value();
  res.bound = Y * std::sqrt(Delta) + 1.0 / std::sqrt(Delta);
  res.K = std::abs(res.sum) / res.bound;
  res.pass = res.K <= 10.0;
  return res;
}

double heath_brown_check(std::uint64_t n_max, int J) {
  if (J < 1 || J > 3) throw InputError("heath_brown_check: J in {1,2,3}");
  if (n_max < 2 || n_max > 2000000)
    throw InputError("heath_brown_check: n_max out of range");
  const std::size_t N = n_max + 1;
  std::uint64_t Z = static_cast<std::uint64_t>(
      std::ceil(std::pow(static_cast<double>(n_max), 1.0 / J) - 1e-9));
  while (true) {  // ensure Z^J >= n_max
    unsigned __int128 zp = 1;
    for (int t = 0; t < J; ++t) zp *= Z;
    if (zp >= n_max) break;
    ++Z;
  }
  auto mob = mobius_table(static_cast<std::uint32_t>(std::min<std::uint64_t>(
      Z, n_max)));
  std::vector<double> muZ(N, 0.0);
  for (std::uint64_t d = 1; d <= Z && d <= n_max; ++d) muZ[d] = mob[d];
  std::vector<double> ones(N, 1.0), logs(N, 0.0);
  ones[0] = 0.0;
  for (std::uint64_t n = 1; n < N; ++n)
    logs[n] = std::log(static_cast<double>(n));

  auto convolve = [N](const std::vector<double>& a,
                      const std::vector<double>& b) {
    std::vector<double> c(N, 0.0);
    for (std::uint64_t d = 1; d < N; ++d) {
      if (a[d] == 0.0) continue;
      for (std::uint64_t k = 1; d * k < N; ++k) {
        if (b[k] != 0.0) c[d * k] += a[d] * b[k];
      }
    }
    return c;
  };

  std::vector<double> total(N, 0.0);
  double sign = 1.0;
  std::vector<double> muZ_pow = muZ;  // muZ^(*j)
  for (int j = 1; j <= J; ++j) {
    if (j > 1) muZ_pow = convolve(muZ_pow, muZ);
    std::vector<double> term = muZ_pow;
    for (int t = 0; t < j - 1; ++t) term = convolve(term, ones);
    term = convolve(term, logs);
    double binom = 1;
    for (int t = 0; t < j; ++t)
      binom = binom * (J - t) / static_cast<double>(t + 1);
    for (std::uint64_t n = 1; n < N; ++n) total[n] += sign * binom * term[n];
    sign = -sign;
  }
  std::vector<double> lam = lambda_table(1, N);
  double worst = 0;
  for (std::uint64_t n = 1; n < N; ++n)
    worst = std::max(worst, std::abs(total[n] - lam[n - 1]));
  return worst;
}

ExpSumResult bilinear_sum(std::uint64_t M, std::uint64_t X, CoefKind a_kind,
                          CoefKind b_kind, const PhaseFamily& phase,
                          int threads) {
  if (M < 1 || X < 2 || M > X) throw InputError("bilinear_sum: need M <= X");
  std::uint64_t table_need = std::max(2 * M, 2 * X / M) + 1;
  if (table_need > 4000000 &&
      (a_kind == CoefKind::Mu || b_kind == CoefKind::Mu))
    throw BudgetError("bilinear_sum: mu table too large for this M, X");
  auto mob = mobius_table(static_cast<std::uint32_t>(
      std::min<std::uint64_t>(table_need, 4000000)));
  auto coef = [&mob](CoefKind kind, std::uint64_t v) {
    switch (kind) {
      case CoefKind::One:
        return 1.0;
      case CoefKind::Mu:
        return static_cast<double>(mob[v]);
      case CoefKind::Log:
        return std::log(static_cast<double>(v));
    }
    return 0.0;
  };
  struct Part {
    ComplexKahan sum;
    Kahan trivial;
    std::uint64_t terms = 0;
  };
  auto parts = chunked_map<Part>(
      M, 2 * M + 1, 1 + M / 64, threads,
      [&](std::uint64_t mlo, std::uint64_t mhi) {
        Part part;
        for (std::uint64_t m = mlo; m < mhi; ++m) {
          double am = coef(a_kind, m);
          if (am == 0.0) continue;
          std::uint64_t nlo = (X + m - 1) / m, nhi = (2 * X) / m;
          for (std::uint64_t n = nlo; n <= nhi; ++n) {
            double bn = coef(b_kind, n);
            if (bn == 0.0) continue;
            part.sum.add(am * bn * e2pi(phase.eval_mod1(m * n)));
            part.trivial.add(std::abs(am * bn));
            ++part.terms;
          }
        }
        return part;
      });
  ComplexKahan sum;
  Kahan trivial;
  ExpSumResult res;
  for (const auto& p : parts) {
    sum.merge(p.sum);
    trivial.merge(p.trivial);
    res.terms += p.terms;
  }
  res.value = sum.value();
  res.trivial = trivial.value();
  res.ratio = res.trivial > 0 ? std::abs(res.value) / res.trivial : 0.0;
  if (std::abs(res.value) > res.trivial + 1e-9)
    throw InvariantError("bilinear_sum: triangle inequality violated");
  return res;
}

Theta2Check theta2_lower_check(std::uint64_t W,
                               const std::vector<std::uint64_t>& moduli,
                               std::uint64_t r0,
                               const std::vector<std::uint64_t>& residues) {
  if (W == 0) throw InputError("theta2: W must be positive");
  if (moduli.size() != residues.size())
    throw InputError("theta2: moduli/residues size mismatch");
  if (r0 >= W && W > 1) throw InputError("theta2: r0 must lie below W");
  bool all_zero = (r0 % W) == 0 || W == 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (moduli[i] == 0 || residues[i] >= moduli[i])
      throw InputError("theta2: residue out of range");
    if (residues[i] != 0) all_zero = false;
    if (std::gcd(moduli[i], W) != 1)
      throw InputError("theta2: modulus shares a factor with W");
    for (std::size_t j = 0; j < i; ++j)
      if (std::gcd(moduli[i], moduli[j]) != 1)
        throw InputError("theta2: moduli not pairwise coprime");
  }
  if (W == 1 && r0 != 0) throw InputError("theta2: r0 must be 0 for W = 1");
  if (all_zero) throw InputError("theta2: all residues zero");

  Theta2Check out;
  mpq_class theta(static_cast<unsigned long>(r0),
                  static_cast<unsigned long>(W));
  theta.canonicalize();
  mpq_class bound_den(static_cast<unsigned long>(W));
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    mpq_class term(static_cast<unsigned long>(residues[i] * (i + 1)),
                   static_cast<unsigned long>(moduli[i]));
    term.canonicalize();
    theta += term;
    bound_den *= mpq_class(static_cast<unsigned long>(moduli[i]));
  }
  out.theta2 = theta;
  out.bound = 1 / bound_den;
  // fractional part and distance to the nearest integer
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), theta.get_num().get_mpz_t(),
             theta.get_den().get_mpz_t());
  mpq_class frac = theta - mpq_class(fl);
  mpq_class cofrac = mpq_class(1) - frac;
  out.norm = frac < cofrac ? frac : cofrac;
  out.degenerate = (out.norm == 0);
  out.pass = !out.degenerate && out.norm >= out.bound;
  return out;
}

}  // namespace psgap
