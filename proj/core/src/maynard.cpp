#include "psgap/maynard.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "psgap/errors.hpp"
#include "psgap/parallel.hpp"
#include "psgap/powerfloor.hpp"
#include "psgap/primes.hpp"
#include "psgap/psprimes.hpp"
#include "psgap/smoothing.hpp"

namespace psgap {

namespace {

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  return a / std::gcd(a, b) * b;
}

// distinct prime factors via the shared base-prime list
std::vector<std::uint32_t> distinct_primes(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  const auto& primes = small_primes(1 << 16);
  for (std::uint32_t p : primes) {
    if (std::uint64_t(p) * p > n) break;
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) {
    if (n > 0xffffffffull)
      throw BudgetError("distinct_primes: factor exceeds 32 bits");
    out.push_back(static_cast<std::uint32_t>(n));
  }
  return out;
}

// squarefree divisors (as products of distinct prime subsets) that are
// <= limit and coprime to W, ascending
std::vector<std::uint32_t> squarefree_divisors(std::uint64_t n, double limit,
                                               std::uint64_t W) {
  std::vector<std::uint32_t> ps = distinct_primes(n);
  std::vector<std::uint32_t> out = {1};
  for (std::uint32_t p : ps) {
    if (W % p == 0 && W > 1) continue;
    std::size_t cur = out.size();
    for (std::size_t i = 0; i < cur; ++i) {
      double v = static_cast<double>(out[i]) * p;
      if (v <= limit) out.push_back(out[i] * p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

WeightGenerator::WeightGenerator(SimplexPoly f, double R, int k0,
                                 std::uint64_t W)
    : f_(std::move(f)), R_(R), k0_(k0), W_(W) {
  if (R < 2) throw InputError("WeightGenerator: R must be at least 2");
  if (f_.nvars() != k0 + 1)
    throw InputError("WeightGenerator: f must have k0+1 variables");
  log_R_ = std::log(R);
  mobius_ = mobius_table(static_cast<std::uint32_t>(R) + 1);
}

double WeightGenerator::lambda(std::span<const std::uint32_t> d) const {
  if (static_cast<int>(d.size()) != k0_ + 1)
    throw InputError("lambda: tuple arity mismatch");
  double prod = 1;
  int mu = 1;
  for (std::uint32_t di : d) {
    if (di == 0) throw InputError("lambda: zero entry");
    prod *= di;
    if (prod > R_) return 0.0;
    if (di >= mobius_.size()) return 0.0;
    int m = mobius_[di];
    if (m == 0) return 0.0;
    mu *= m;
  }
  double args[32];
  for (std::size_t i = 0; i < d.size(); ++i)
    args[i] = std::log(static_cast<double>(d[i])) / log_R_;
  return mu * f_(std::span<const double>(args, d.size()));
}

std::vector<std::vector<std::uint32_t>> tuple_family(double R, std::uint64_t W,
                                                     int k0) {
  if (R < 1) throw InputError("tuple_family: R must be >= 1");
  auto mob = mobius_table(static_cast<std::uint32_t>(R) + 1);
  std::vector<std::uint32_t> admissible;
  for (std::uint32_t d = 1; d <= static_cast<std::uint32_t>(R); ++d)
    if (mob[d] != 0 && std::gcd<std::uint64_t>(d, W) == 1)
      admissible.push_back(d);
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur(k0 + 1, 1);
  auto rec = [&](auto&& self, int pos, double prod) -> void {
    if (pos > k0) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t d : admissible) {
      double np = prod * d;
      if (np > R) {
        if (d > 1) break;  // admissible ascending; larger d only worse
        continue;
      }
      cur[pos] = d;
      self(self, pos + 1, np);
    }
  };
  rec(rec, 0, 1.0);
  return out;
}

LemmaCheck sieve_sum_bruteforce(const WeightGenerator& gen,
                                std::uint64_t pair_budget) {
  const int k = gen.k0();
  auto tuples = tuple_family(gen.R(), gen.W(), k);
  // cache nonzero-weight tuples with their lcm-ready entries
  struct T {
    std::vector<std::uint32_t> d;
    double lam;
  };
  std::vector<T> ts;
  ts.reserve(tuples.size());
  for (auto& d : tuples) {
    double l = gen.lambda(d);
    if (l != 0.0) ts.push_back({std::move(d), l});
  }
  const std::uint64_t total =
      static_cast<std::uint64_t>(ts.size()) * ts.size();
  if (total > pair_budget)
    throw BudgetError("sieve_sum_bruteforce: pair enumeration over budget");

  LemmaCheck res;
  res.pairs_enumerated = total;
  Kahan acc;
  std::vector<std::uint64_t> l(k + 1);
  for (const auto& a : ts) {
    for (const auto& b : ts) {
      bool ok = true;
      for (int i = 0; i <= k && ok; ++i) {
        l[i] = lcm_u64(a.d[i], b.d[i]);
        for (int j = 0; j < i; ++j) {
          if (std::gcd(l[i], l[j]) != 1) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) continue;
      ++res.pairs_coprime;
      double denom = 1;
      for (int i = 0; i <= k; ++i) denom *= static_cast<double>(l[i]);
      acc.add(a.lam * b.lam / denom);
    }
  }
  res.lhs = acc.value();

  DensePoly F = gen.f().poly.mixed_partial_all();
  double int_F2 = (F * F).integrate_simplex().get_d();
  double wphi = static_cast<double>(gen.W()) /
                static_cast<double>(euler_phi(gen.W()));
  res.rhs = std::pow(wphi / std::log(gen.R()), k + 1) * int_F2;
  res.ratio = res.lhs / res.rhs;
  return res;
}

XqClass xq_classify(std::span<const std::uint32_t> d,
                    std::span<const std::uint32_t> e, std::uint64_t W) {
  if (d.size() != e.size()) throw InputError("xq_classify: arity mismatch");
  const std::size_t k1 = d.size();
  std::vector<std::uint64_t> l(k1);
  for (std::size_t i = 0; i < k1; ++i) l[i] = lcm_u64(d[i], e[i]);
  XqClass cls;
  for (std::size_t i = 0; i < k1; ++i)
    for (std::size_t j = i + 1; j < k1; ++j)
      cls.q = lcm_u64(cls.q, std::gcd(l[i], l[j]));
  cls.reduced_lcms.resize(k1);
  for (std::size_t i = 0; i < k1; ++i)
    cls.reduced_lcms[i] = l[i] / std::gcd(cls.q, l[i]);
  // pairwise coprimality of W, q, and the reduced lcms
  cls.certificate_ok = std::gcd(cls.q, W) == 1;
  for (std::size_t i = 0; i < k1 && cls.certificate_ok; ++i) {
    if (std::gcd(cls.reduced_lcms[i], W) != 1 ||
        std::gcd(cls.reduced_lcms[i], cls.q) != 1)
      cls.certificate_ok = false;
    for (std::size_t j = 0; j < i && cls.certificate_ok; ++j)
      if (std::gcd(cls.reduced_lcms[i], cls.reduced_lcms[j]) != 1)
        cls.certificate_ok = false;
  }
  return cls;
}

XqSummary xq_partition_sample(const WeightGenerator& gen, std::uint64_t npairs,
                              std::uint64_t seed) {
  auto tuples = tuple_family(gen.R(), gen.W(), gen.k0());
  if (tuples.empty()) throw InputError("xq_partition_sample: empty family");
  std::mt19937_64 rng(seed);
  XqSummary sum;
  const double r2 = gen.R() * gen.R();
  for (std::uint64_t it = 0; it < npairs; ++it) {
    const auto& d = tuples[rng() % tuples.size()];
    const auto& e = tuples[rng() % tuples.size()];
    XqClass cls = xq_classify(d, e, gen.W());
    ++sum.pairs;
    if (!cls.certificate_ok) ++sum.certificate_violations;
    if (static_cast<double>(cls.q) > r2) ++sum.q_above_r2;
    ++sum.class_sizes[cls.q];
    double ll = std::abs(gen.lambda(d) * gen.lambda(e));
    if (ll != 0.0) {
      double denom = static_cast<double>(cls.q) * static_cast<double>(cls.q);
      for (auto r : cls.reduced_lcms) denom *= static_cast<double>(r);
      sum.mass[cls.q] += ll / denom;
    }
  }
  return sum;
}

namespace {

struct InnerSum {
  // divisor lists per coordinate, ascending
  std::vector<std::vector<std::uint32_t>> divs;
  const WeightGenerator* gen;
  std::vector<std::uint32_t> cur;

  double run() {
    cur.assign(divs.size(), 1);
    return rec(0, 1.0);
  }
  double rec(std::size_t pos, double prod) {
    if (pos == divs.size()) return gen->lambda(cur);
    double acc = 0;
    for (std::uint32_t d : divs[pos]) {
      double np = prod * d;
      if (np > gen->R()) {
        if (d > 1) break;
        continue;
      }
      cur[pos] = d;
      acc += rec(pos + 1, np);
    }
    return acc;
  }
};

struct WindowContext {
  WindowBumps bumps;
  explicit WindowContext(const SieveConfig& cfg) : bumps(window_bumps(cfg)) {}
};

double frac_mid(const FloorResult& fr) {
  return 0.5 * (fr.frac_lo + fr.frac_hi);
}

// common scan over members of N^c in [X, 2X] passing the residue filter
template <typename Fn>
std::uint64_t scan_members(const SieveConfig& cfg, const WeightGenerator& gen,
                           Fn&& fn) {
  std::uint64_t terms = 0;
  enumerate_ps(cfg.X, 2 * cfg.X, cfg.c, [&](const PSElement& el) {
    std::uint64_t n = el.m;
    std::vector<std::uint64_t> s(cfg.k0 + 1);
    bool pass = true;
    for (int j = 0; j <= cfg.k0; ++j) {
      s[j] = shift_map(n, j, cfg.c);
      if (cfg.W > 1 &&
          s[j] % cfg.W !=
              static_cast<std::uint64_t>(cfg.b_residue) % cfg.W)
        pass = false;
    }
    if (!pass) return;
    InnerSum inner;
    inner.gen = &gen;
    inner.divs.resize(cfg.k0 + 1);
    for (int j = 0; j <= cfg.k0; ++j)
      inner.divs[j] = squarefree_divisors(s[j], gen.R(), gen.W());
    double lam_sum = inner.run();
    ++terms;
    fn(n, s, lam_sum);
  });
  return terms;
}

}  // namespace

PropSum weighted_prime_window_sum(const SieveConfig& cfg,
                                  const WeightGenerator& gen, int h) {
  if (h < 0 || h > cfg.k0)
    throw InputError("weighted_prime_window_sum: h out of range");
  WindowContext ctx(cfg);
  Kahan acc;
  PropSum out;
  out.terms = scan_members(cfg, gen, [&](std::uint64_t, const auto& s,
                                         double lam_sum) {
    std::uint64_t sh = s[h];
    double w = varpi(sh);
    if (w == 0.0) return;
    w *= ctx.bumps.chi(frac_mid(pow_floor(sh, cfg.c.q, cfg.c.p)));
    if (w == 0.0) return;
    w *= ctx.bumps.psi(frac_mid(floor_c_n_pow(sh, cfg.c)));
    if (w == 0.0) return;
    acc.add(w * lam_sum * lam_sum);
  });
  out.value = acc.value();

  DensePoly F = gen.f().poly.mixed_partial_all();
  DensePoly G = F.integrate_first_var();
  double int_G2 = (G * G).integrate_simplex().get_d();
  double logR = std::log(gen.R());
  double W = static_cast<double>(gen.W());
  double phiW = static_cast<double>(euler_phi(gen.W()));
  double Xg = std::pow(static_cast<double>(cfg.X), cfg.gamma());
  double d0 = cfg.delta0.to_double(), e0 = cfg.eta0.to_double();
  double full = std::pow(logR, -cfg.k0) * std::pow(W, cfg.k0 - 1) /
                std::pow(phiW, cfg.k0 + 1) *
                (9.0 * d0 * e0 * (cfg.k0 + 1) * Xg / 16.0) * int_G2;
  out.main_term = full / (cfg.k0 + 1);  // per-h share
  out.ratio = out.value / out.main_term;
  return out;
}

PropSum weighted_membership_sum(const SieveConfig& cfg,
                                const WeightGenerator& gen) {
  WindowContext ctx(cfg);
  Kahan acc;
  PropSum out;
  out.terms = scan_members(cfg, gen, [&](std::uint64_t n, const auto&,
                                         double lam_sum) {
    double w = ctx.bumps.chi_star(frac_mid(pow_floor(n, cfg.c.q, cfg.c.p)));
    if (w == 0.0) return;
    w *= ctx.bumps.psi_star(frac_mid(floor_c_n_pow(n, cfg.c)));
    if (w == 0.0) return;
    acc.add(w * lam_sum * lam_sum);
  });
  out.value = acc.value();

  DensePoly F = gen.f().poly.mixed_partial_all();
  double int_F2 = (F * F).integrate_simplex().get_d();
  double logR = std::log(gen.R());
  double W = static_cast<double>(gen.W());
  double phiW = static_cast<double>(euler_phi(gen.W()));
  double Xg = std::pow(static_cast<double>(cfg.X), cfg.gamma());
  double d0 = cfg.delta0.to_double(), e0 = cfg.eta0.to_double();
  out.main_term = std::pow(logR, -(cfg.k0 + 1)) * std::pow(W, cfg.k0 - 1) /
                  std::pow(phiW, cfg.k0 + 1) * (9.0 * d0 * e0 * Xg / 2.0) *
                  int_F2;
  out.ratio = out.value / out.main_term;
  return out;
}

CombinedSum combined_positivity_sum(const SieveConfig& cfg,
                                    const WeightGenerator& gen, int m) {
  WindowContext ctx(cfg);
  Kahan acc;
  CombinedSum out;
  const double log3X = std::log(3.0 * static_cast<double>(cfg.X));
  out.terms = scan_members(cfg, gen, [&](std::uint64_t n, const auto& s,
                                         double lam_sum) {
    double inner = 0;
    for (int h = 0; h <= cfg.k0; ++h) {
      std::uint64_t sh = s[h];
      double w = varpi(sh);
      if (w == 0.0) continue;
      w *= ctx.bumps.chi(frac_mid(pow_floor(sh, cfg.c.q, cfg.c.p)));
      if (w == 0.0) continue;
      w *= ctx.bumps.psi(frac_mid(floor_c_n_pow(sh, cfg.c)));
      inner += w;
    }
    double star = ctx.bumps.chi_star(frac_mid(pow_floor(n, cfg.c.q, cfg.c.p))) *
                  ctx.bumps.psi_star(frac_mid(floor_c_n_pow(n, cfg.c)));
    acc.add(lam_sum * lam_sum * (inner - m * star * log3X));
  });
  out.value = acc.value();
  out.positive = out.value > 0;
  return out;
}

}  // namespace psgap
