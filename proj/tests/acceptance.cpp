// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <gmpxx.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <set>
#include <vector>

#include "psgap/cluster.hpp"
#include "psgap/parallel.hpp"
#include "psgap/expsums.hpp"
#include "psgap/maynard.hpp"
#include "psgap/params.hpp"
#include "psgap/powerfloor.hpp"
#include "psgap/primes.hpp"
#include "psgap/psprimes.hpp"
#include "psgap/smoothing.hpp"
#include "psgap/variational.hpp"

using namespace psgap;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0)
        .count();
  }
};

void report(int idx, const char* name, bool pass, double secs,
            const std::string& detail) {
  std::printf("%s  criterion %2d  %-28s (%.1fs) %s\n", pass ? "PASS" : "FAIL",
              idx, name, secs, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

// independent naive big-integer binary-search root oracle
std::uint64_t oracle_pow_floor(std::uint64_t n, unsigned a, unsigned b) {
  mpz_class A;
  mpz_ui_pow_ui(A.get_mpz_t(), n, a);
  mpz_class lo = 0, hi = 1;
  auto le = [&](const mpz_class& v) {
    mpz_class vb;
    mpz_pow_ui(vb.get_mpz_t(), v.get_mpz_t(), b);
    return vb <= A;
  };
  while (le(hi)) hi *= 2;
  while (hi - lo > 1) {
    mpz_class mid = (lo + hi) / 2;
    if (le(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo.get_ui();
}

const Exponent c11 = validate_exponent(11, 10);
const int kThreads = 2;

void criterion1() {
  Timer t;
  std::uint64_t bad = 0;
  for (auto [p, q] : {std::pair<unsigned, unsigned>{11, 10},
                      {9, 8},
                      {21, 20}}) {
    Exponent c = validate_exponent(p, q);
    auto parts = chunked_map<std::uint64_t>(
        1, 100001, 1 << 14, kThreads, [&](std::uint64_t a, std::uint64_t b) {
          std::uint64_t local = 0;
          for (std::uint64_t n = a; n < b; ++n) {
            if (pow_floor(n, c.p, c.q).value != oracle_pow_floor(n, c.p, c.q))
              ++local;
          }
          return local;
        });
    for (auto v : parts) bad += v;
  }
  report(1, "floor-power exactness", bad == 0 && t.seconds() <= 60,
         t.seconds(), fmt("disagreements=%llu", (unsigned long long)bad));
}

void criterion2() {
  Timer t;
  // brute-force image of n -> [n^c] up to 1e6
  std::vector<bool> image(1000001, false);
  for (std::uint64_t n = 1;; ++n) {
    std::uint64_t m = pow_floor(n, 11, 10).value;
    if (m > 1000000) break;
    image[m] = true;
  }
  auto parts = chunked_map<std::uint64_t>(
      1, 1000001, 1 << 16, kThreads, [&](std::uint64_t a, std::uint64_t b) {
        std::uint64_t local = 0;
        for (std::uint64_t m = a; m < b; ++m) {
          // is_ps_member cross-checks routes (a) and (b) internally and
          // throws on disagreement
          if (is_ps_member(m, c11) != image[m]) ++local;
        }
        return local;
      });
  std::uint64_t bad = 0;
  for (auto v : parts) bad += v;
  // enumerate_ps equals the image set exactly
  std::uint64_t enum_bad = 0, count = 0;
  std::uint64_t prev = 0;
  enumerate_ps(1, 1000000, c11, [&](const PSElement& e) {
    ++count;
    if (!image[e.m] || e.m <= prev) ++enum_bad;
    prev = e.m;
  });
  std::uint64_t image_count = 0;
  for (std::uint64_t m = 1; m <= 1000000; ++m) image_count += image[m];
  bool pass = bad == 0 && enum_bad == 0 && count == image_count &&
              t.seconds() <= 120;
  report(2, "membership bi-implementation", pass, t.seconds(),
         fmt("members=%llu mismatches=%llu", (unsigned long long)count,
             (unsigned long long)bad));
}

void criterion3() {
  Timer t;
  bool pass = true;
  std::string detail;
  for (std::uint64_t X : {100000ull, 1000000ull}) {
    ConfigOverrides ov;
    ov.threads = kThreads;
    SieveConfig cfg = derive_config(c11, 5, 1, X, ov);
    IdentityReport a = verify_shift_identity(cfg, X, 2 * X);
    CompositionReport b = verify_shift_composition(cfg, X, 2 * X);
    pass = pass && a.failures == 0 && a.unresolved == 0 &&
           a.member_failures == 0 && a.split_failures == 0 &&
           a.split_unresolved == 0 && b.failures == 0 && b.unresolved == 0 &&
           b.frac_conclusion_failures == 0;
    detail += fmt("[X=%llu certified=%llu qualifying=%llu fail=%llu unres=%llu] ",
                  (unsigned long long)X, (unsigned long long)a.window_certified,
                  (unsigned long long)b.qualifying,
                  (unsigned long long)(a.failures + b.failures),
                  (unsigned long long)(a.unresolved + b.unresolved));
  }
  pass = pass && t.seconds() <= 300;
  report(3, "shift identity verification", pass, t.seconds(), detail);
}

void criterion4() {
  Timer t;
  DensityReport r5 = density_report(100000, c11, kThreads);
  DensityReport r7 = density_report(10000000, c11, kThreads);
  bool pass = r7.ratio >= 0.8 && r7.ratio <= 1.25 &&
              std::abs(r7.ratio - 1.0) < std::abs(r5.ratio - 1.0) &&
              t.seconds() <= 300;
  report(4, "density main term", pass, t.seconds(),
         fmt("ratio(1e5)=%.4f ratio(1e7)=%.4f count=%llu", r5.ratio, r7.ratio,
             (unsigned long long)r7.count));
}

void criterion5() {
  Timer t;
  SieveConfig cfg = derive_config(c11, 5, 1, 1000000);
  WindowBumps pb = window_bumps(cfg, 4);
  const BumpFunction* bumps[4] = {&pb.chi, &pb.psi, &pb.chi_star,
                                  &pb.psi_star};
  std::uint64_t plateau_bad = 0, range_bad = 0;
  const int N = 1 << 20;
  for (const BumpFunction* b : bumps) {
    double lo = b->plateau_lo() + b->shift();
    double hi = b->plateau_hi() + b->shift();
    double alo = b->alpha() + b->shift();
    double bhi = b->beta() + b->shift();
    for (int i = 0; i < N; ++i) {
      double x = static_cast<double>(i) / N;
      double u = x - std::floor(x - alo);  // representative in [alo, alo+1)
      double v = (*b)(x);
      if (v < 0.0 || v > 1.0) ++range_bad;
      if (u >= lo && u <= hi && v != 1.0) ++plateau_bad;
      if ((u <= alo || u >= bhi) && v != 0.0) ++plateau_bad;
      if ((*b)(x) != (*b)(x + 1.0)) ++range_bad;
    }
  }
  double a0_err = 0, worst_K = 0;
  for (const BumpFunction* b : bumps) {
    FourierReport rep = bump_fourier(*b, 10000);
    a0_err = std::max(a0_err, std::abs(rep.coeffs[0].real() - b->a0()));
    a0_err = std::max(a0_err, std::abs(rep.coeffs[0].imag()));
    worst_K = std::max(worst_K, rep.K_r);
  }
  bool pass = plateau_bad == 0 && range_bad == 0 && a0_err <= 1e-10 &&
              worst_K <= 100.0 && t.seconds() <= 60;
  report(5, "bump plateau and decay", pass, t.seconds(),
         fmt("plateau_bad=%llu a0_err=%.2e K=%.2f",
             (unsigned long long)plateau_bad, a0_err, worst_K));
}

void criterion6() {
  Timer t;
  std::mt19937_64 rng(20240801);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::uint64_t coeff_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    double theta = uni(rng);
    if (theta == 0.0 || theta == 1.0) continue;
    SawtoothExpansion s = sawtooth_expand(theta, 100);
    if (std::abs(s.c_theta) > s.norm_theta) ++coeff_bad;
  }
  const int H = 100;
  double worst = 0;
  for (double theta : {0.5, 0.25, 0.1, 0.77, 0.9}) {
    SawtoothExpansion s = sawtooth_expand(theta, H);
    for (int i = 0; i < 8192; ++i) {
      double x = (i + 0.5) / 8192.0;
      double nx = std::abs(x - std::round(x));
      if (nx < 1.0 / H) continue;
      double err = std::abs(s.exact(x) - s.truncated(x));
      worst = std::max(worst, err / (s.envelope(x) * std::log(1.0 * H)));
    }
  }
  bool pass = coeff_bad == 0 && worst <= 10.0 && t.seconds() <= 60;
  report(6, "sawtooth expansion", pass, t.seconds(),
         fmt("coeff_bad=%llu K=%.3f", (unsigned long long)coeff_bad, worst));
}

SimplexPoly accept_poly(int k0) {
  if (k0 == 0) {
    DensePoly p(1);
    p.add_term({0}, 1);
    p.add_term({1}, -2);
    p.add_term({2}, 1);
    return SimplexPoly{p};
  }
  DensePoly one = DensePoly::constant(2, 1);
  DensePoly P1 = DensePoly::variable(2, 0) + DensePoly::variable(2, 1);
  DensePoly P2 = DensePoly::variable(2, 0) * DensePoly::variable(2, 0) +
                 DensePoly::variable(2, 1) * DensePoly::variable(2, 1);
  DensePoly u = one - P1;
  DensePoly f = u.pow(3) - u.pow(4).scaled(mpq_class(3, 4)) +
                u.pow(5).scaled(mpq_class(3, 10)) +
                (u.pow(2) * P2).scaled(mpq_class(2, 7)) -
                (u.pow(3) * P2).scaled(mpq_class(9, 10));
  return SimplexPoly{f};
}

void criterion7() {
  Timer t;
  bool pass = true;
  std::string detail;
  for (int k0 : {0, 1}) {
    double r100, r300, r1000;
    {
      WeightGenerator g(accept_poly(k0), 100.0, k0, 2);
      r100 = sieve_sum_bruteforce(g).ratio;
    }
    {
      WeightGenerator g(accept_poly(k0), 300.0, k0, 2);
      r300 = sieve_sum_bruteforce(g).ratio;
    }
    {
      WeightGenerator g(accept_poly(k0), 1000.0, k0, 2);
      r1000 = sieve_sum_bruteforce(g).ratio;
    }
    pass = pass && r300 >= 0.6 && r300 <= 1.5 &&
           std::abs(r1000 - 1.0) < std::abs(r100 - 1.0);
    detail += fmt("[k0=%d %.4f/%.4f/%.4f] ", k0, r100, r300, r1000);
  }
  pass = pass && t.seconds() <= 600;
  report(7, "weight-sum brute force", pass, t.seconds(), detail);
}

void criterion8() {
  Timer t;
  // 1e6 random tuple pairs at R = 200
  WeightGenerator gen(accept_poly(1), 200.0, 1, 2);
  XqSummary sum = xq_partition_sample(gen, 1000000, 424242);
  std::uint64_t size_total = 0;
  for (const auto& [q, n] : sum.class_sizes) size_total += n;
  bool xq_ok = sum.certificate_violations == 0 && sum.q_above_r2 == 0 &&
               size_total == sum.pairs;
  // 1e4 random exact rational lower-bound checks
  std::mt19937_64 rng(5150);
  int tested = 0;
  std::uint64_t bad = 0;
  while (tested < 10000) {
    std::vector<std::uint64_t> moduli, residues;
    std::uint64_t used = 2;
    int k = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < k; ++i) {
      std::uint64_t m = 3 + 2 * (rng() % 100);
      if (std::gcd(m, used) != 1) continue;
      used *= m;
      moduli.push_back(m);
      residues.push_back(rng() % m);
    }
    if (moduli.empty()) continue;
    std::uint64_t r0 = rng() % 2;
    bool all_zero = r0 == 0;
    for (auto r : residues) all_zero = all_zero && r == 0;
    if (all_zero) continue;
    Theta2Check chk = theta2_lower_check(2, moduli, r0, residues);
    ++tested;
    if (!chk.degenerate) {
      mpq_class prod(2);
      for (auto m : moduli) prod *= mpq_class(static_cast<unsigned long>(m));
      if (!(chk.pass && chk.norm * prod >= 1)) ++bad;
    }
  }
  bool pass = xq_ok && bad == 0 && t.seconds() <= 120;
  report(8, "Xq partition + theta2 bound", pass, t.seconds(),
         fmt("violations=%llu theta2_bad=%llu classes=%zu",
             (unsigned long long)sum.certificate_violations,
             (unsigned long long)bad, sum.class_sizes.size()));
}

void criterion9() {
  Timer t;
  bool pass = true;
  RatioSolution k1 = solve_ratio(1, 3);
  pass = pass && std::abs(k1.ratio - 1.0) <= 1e-10;
  double prev_k = 0;
  for (int k = 1; k <= 6; ++k) {
    double prev_d = -1, last = 0;
    for (int d = 0; d <= 4; ++d) {
      RatioSolution sol = solve_ratio(k, d);
      pass = pass && sol.residual <= 1e-8 && sol.ratio >= prev_d - 1e-9;
      prev_d = sol.ratio;
      last = sol.ratio;
    }
    pass = pass && last >= prev_k - 1e-9;
    prev_k = last;
  }
  double r50 = 0, r100 = 0;
  {
    RatioSolution sol = solve_ratio(51, 3);
    r50 = sol.ratio;
    pass = pass && sol.residual <= 1e-8 && sol.ratio >= mk_bound(50);
  }
  {
    RatioSolution sol = solve_ratio(101, 3);
    r100 = sol.ratio;
    pass = pass && sol.residual <= 1e-8 && sol.ratio >= mk_bound(100);
  }
  pass = pass && t.seconds() <= 120;
  report(9, "variational optimization", pass, t.seconds(),
         fmt("ratio(k0=50)=%.3f>=%.3f ratio(k0=100)=%.3f>=%.3f", r50,
             mk_bound(50), r100, mk_bound(100)));
}

void criterion10() {
  Timer t;
  double dev = heath_brown_check(100000, 2);
  bool pass = dev <= 1e-9 && t.seconds() <= 60;
  report(10, "von Mangoldt decomposition", pass, t.seconds(),
         fmt("max_dev=%.2e", dev));
}

void criterion11() {
  Timer t;
  const double N = 10000.0;
  auto f = [N](double x) { return x * x / (2.0 * N); };
  auto fdd = [N](double) { return 1.0 / N; };
  VdcResult quad = vdc_check(f, fdd, 0.0, N, 1.0 / N);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uni(0.5, 50.0);
  const double X = 50000.0, Y = 40000.0;
  const double gamma = 10.0 / 11.0;
  int ok = 0;
  for (int i = 0; i < 100; ++i) {
    double theta3 = uni(rng);
    auto ph = [=](double x) { return theta3 * 1.1 * std::pow(x, 1.0 - gamma); };
    auto phdd = [=](double x) {
      return theta3 * 1.1 * (1.0 - gamma) * (-gamma) *
             std::pow(x, -1.0 - gamma);
    };
    double Delta = std::abs(phdd(X + Y));
    VdcResult r = vdc_check(ph, phdd, X, Y, Delta);
    if (r.K <= 10.0) ++ok;
  }
  bool pass = quad.K <= 1.0 && ok == 100 && t.seconds() <= 120;
  report(11, "van der Corput envelope", pass, t.seconds(),
         fmt("quad_K=%.3f family_ok=%d/100", quad.K, ok));
}

void criterion12() {
  Timer t;
  PhaseFamily zero;
  zero.c = c11;
  ExpSumResult z = lambda_exp_sum(100000, zero, kThreads);
  PhaseFamily ph;
  ph.c = c11;
  ph.j = 1.0;
  ExpSumResult g = lambda_exp_sum(100000, ph, kThreads);
  bool pass = std::abs(z.ratio - 1.0) <= 1e-9 && g.ratio <= 0.1 &&
              t.seconds() <= 60;
  report(12, "exponential-sum cancellation", pass, t.seconds(),
         fmt("zero=%.12f gamma=%.4f", z.ratio, g.ratio));
}

void criterion13() {
  Timer t;
  ConfigOverrides ov;
  ov.threads = kThreads;
  SieveConfig cfg = derive_config(c11, 10, 1, 1000, ov);
  WitnessResult w = witness_search(cfg, 1, 2, 11000000);
  bool witness_ok = w.found && w.record.n <= 1000000 &&
                    w.record.values.size() >= 2 && w.shift_mismatches == 0;
  GapStats st = gap_stats(c11, 10000000, -1.0, kThreads);
  bool gaps_ok = st.below_tau >= 100 && st.lower_bound_violations == 0;
  bool pass = witness_ok && gaps_ok && t.seconds() <= 600;
  report(13, "witness + gap statistics", pass, t.seconds(),
         fmt("witness_n=%llu below_tau=%llu violations=%llu",
             (unsigned long long)(w.found ? w.record.n : 0),
             (unsigned long long)st.below_tau,
             (unsigned long long)st.lower_bound_violations));
}

void criterion14() {
  Timer t;
  bool pass = true;
  {
    DensityReport a = density_report(1000000, c11, 1);
    DensityReport b = density_report(1000000, c11, 8);
    pass = pass && a.count == b.count && a.ratio == b.ratio;
  }
  {
    PhaseFamily ph;
    ph.c = c11;
    ph.j = 1.0;
    ExpSumResult a = lambda_exp_sum(100000, ph, 1);
    ExpSumResult b = lambda_exp_sum(100000, ph, 8);
    pass = pass && a.value.real() == b.value.real() &&
           a.value.imag() == b.value.imag() && a.trivial == b.trivial;
  }
  {
    GapStats a = gap_stats(c11, 1000000, -1.0, 1);
    GapStats b = gap_stats(c11, 1000000, -1.0, 8);
    pass = pass && a.records.size() == b.records.size() &&
           a.below_tau == b.below_tau;
    for (std::size_t i = 0; pass && i < a.records.size(); ++i)
      pass = a.records[i].normalized_gap == b.records[i].normalized_gap;
  }
  {
    ConfigOverrides o1;
    o1.threads = 1;
    SieveConfig c1 = derive_config(c11, 5, 1, 1000000, o1);
    ConfigOverrides o8 = o1;
    o8.threads = 8;
    SieveConfig c8 = derive_config(c11, 5, 1, 1000000, o8);
    IdentityReport a = verify_shift_identity(c1, 1470000, 1490000);
    IdentityReport b = verify_shift_identity(c8, 1470000, 1490000);
    pass = pass && a.window_certified == b.window_certified &&
           a.checked == b.checked && a.failures == b.failures;
  }
  {
    auto a = scan_clusters_vec(c11, 5, 100000, 200000, 2, 1);
    auto b = scan_clusters_vec(c11, 5, 100000, 200000, 2, 8);
    pass = pass && a.size() == b.size();
    for (std::size_t i = 0; pass && i < a.size(); ++i)
      pass = a[i].n == b[i].n && a[i].values == b[i].values &&
             a[i].normalized_span == b[i].normalized_span;
  }
  report(14, "thread-count determinism", pass, t.seconds(), "");
}

}  // namespace

int main() {
  Timer total;
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  criterion12();
  criterion13();
  criterion14();
  std::printf("%s  (%d/14 in %.1fs)\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
              14 - g_failures, total.seconds());
  return g_failures == 0 ? 0 : 1;
}
