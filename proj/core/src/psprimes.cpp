#include "psgap/psprimes.hpp"

#include <cmath>

#include "psgap/errors.hpp"
#include "psgap/parallel.hpp"
#include "psgap/primes.hpp"

namespace psgap {

namespace {

unsigned up(std::uint64_t v) { return static_cast<unsigned>(v); }

}  // namespace

bool is_ps_member(std::uint64_t m, const Exponent& c) {
  if (m == 0) throw InputError("is_ps_member: m must be positive");
  // (a) ceiling-difference: #integers in [m^g, (m+1)^g) is 1 iff member.
  std::uint64_t ca = pow_ceil(m, up(c.q), up(c.p));
  std::uint64_t cb = pow_ceil(m + 1, up(c.q), up(c.p));
  bool route_a = (cb - ca) >= 1;
  // (b) minimal preimage: smallest n with n^c >= m.
  std::uint64_t n0 = ca;
  bool route_b = pow_floor(n0, up(c.p), up(c.q)).value == m;
  if (route_a != route_b)
    throw InvariantError("is_ps_member: floor-difference and preimage routes disagree at m=" +
                         std::to_string(m));
  return route_b;
}

void enumerate_ps(std::uint64_t X1, std::uint64_t X2, const Exponent& c,
                  const std::function<void(const PSElement&)>& yield) {
  if (X1 > X2) throw InputError("enumerate_ps: empty range");
  std::uint64_t n = pow_ceil(std::max<std::uint64_t>(X1, 1), up(c.q), up(c.p));
  for (;; ++n) {
    FloorResult fr = pow_floor(n, up(c.p), up(c.q));
    if (fr.value > X2) break;
    PSElement e;
    e.m = fr.value;
    e.n = n;
    FloorResult fg = pow_floor(fr.value, up(c.q), up(c.p));
    e.frac_m_gamma_lo = fg.frac_lo;
    e.frac_m_gamma_hi = fg.frac_hi;
    yield(e);
  }
}

std::vector<PSElement> enumerate_ps_vec(std::uint64_t X1, std::uint64_t X2,
                                        const Exponent& c) {
  std::vector<PSElement> out;
  enumerate_ps(X1, X2, c, [&](const PSElement& e) { out.push_back(e); });
  return out;
}

std::uint64_t shift_map(std::uint64_t n, long long h, const Exponent& c) {
  std::uint64_t u = pow_floor(n, up(c.q), up(c.p)).value;
  long long base = static_cast<long long>(u) + h + 1;
  if (base < 1) throw InputError("shift_map: [n^gamma]+h+1 below 1");
  return pow_floor(static_cast<std::uint64_t>(base), up(c.p), up(c.q)).value;
}

WindowEdges hypothesis_windows(const SieveConfig& cfg) {
  WindowEdges w;
  Frac one(1, 1);
  w.g_lo = {one, Frac(-4, 1) * cfg.delta0};
  w.g_hi = {one, Frac(-1, 4) * cfg.delta0};
  w.c_lo = {cfg.eta0, Frac()};
  w.c_hi = {Frac(2, 1) * cfg.eta0, Frac()};
  return w;
}

WindowCertificate window_certificate(std::uint64_t n, const SieveConfig& cfg) {
  WindowEdges w = hypothesis_windows(cfg);
  WindowCertificate wc;
  wc.frac_n_gamma_in_range =
      frac_in_open_window(n, FracQuantity::NGamma, cfg.c, cfg.X, w.g_lo,
                          w.g_hi, cfg.max_precision_bits);
  // skip the second certificate when the first already fails
  if (wc.frac_n_gamma_in_range == Cert::False) {
    wc.frac_c_window = Cert::False;
    return wc;
  }
  wc.frac_c_window =
      frac_in_open_window(n, FracQuantity::CNPow, cfg.c, cfg.X, w.c_lo, w.c_hi,
                          cfg.max_precision_bits);
  return wc;
}

void IdentityReport::merge(const IdentityReport& o) {
  window_certified += o.window_certified;
  checked += o.checked;
  failures += o.failures;
  unresolved += o.unresolved;
  split_checked += o.split_checked;
  split_failures += o.split_failures;
  split_unresolved += o.split_unresolved;
  member_failures += o.member_failures;
}

IdentityReport verify_shift_identity(const SieveConfig& cfg, std::uint64_t lo,
                                     std::uint64_t hi) {
  if (lo < cfg.X || hi > 2 * cfg.X || lo > hi)
    throw InputError("verify_shift_identity: range must lie in [X, 2X]");
  auto parts = chunked_map<IdentityReport>(
      lo, hi + 1, std::uint64_t(1) << 16, cfg.threads,
      [&cfg](std::uint64_t a, std::uint64_t b) {
        IdentityReport rep;
        for (std::uint64_t n = a; n < b; ++n) {
          WindowCertificate wc = window_certificate(n, cfg);
          if (wc.unresolved()) {
            ++rep.unresolved;
            continue;
          }
          if (!wc.certified()) continue;
          ++rep.window_certified;
          std::uint64_t cn = floor_c_n_pow(n, cfg.c).value;
          if (!is_ps_member(n, cfg.c)) ++rep.member_failures;
          for (long long h = -cfg.k0; h <= cfg.k0; ++h) {
            std::uint64_t sh = shift_map(n, h, cfg.c);
            long long expect = static_cast<long long>(n) +
                               h * static_cast<long long>(cn);
            ++rep.checked;
            if (expect < 0 ||
                sh != static_cast<std::uint64_t>(expect))
              ++rep.failures;
            // secondary tally: the two-branch floor form
            ++rep.split_checked;
            try {
              std::uint64_t fsp =
                  floor_shifted_root_pow(n, h, cfg.c, cfg.max_precision_bits);
              std::uint64_t expect_split = (h >= 0) ? sh : sh - 1;
              if (fsp != expect_split) ++rep.split_failures;
            } catch (const PrecisionError&) {
              ++rep.split_unresolved;
            }
          }
        }
        return rep;
      });
  IdentityReport total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

void CompositionReport::merge(const CompositionReport& o) {
  members += o.members;
  qualifying += o.qualifying;
  checked += o.checked;
  failures += o.failures;
  frac_conclusion_failures += o.frac_conclusion_failures;
  unresolved += o.unresolved;
  max_frac_deviation = std::max(max_frac_deviation, o.max_frac_deviation);
}

CompositionReport verify_shift_composition(const SieveConfig& cfg,
                                           std::uint64_t lo, std::uint64_t hi) {
  if (lo < cfg.X || hi > 2 * cfg.X || lo > hi)
    throw InputError("verify_shift_composition: range must lie in [X, 2X]");
  // chi positivity: {t} in (1-2 d0 X^(g-1), 1 - d0 X^(g-1)); psi positivity:
  // {c t} in (eta0, 2 eta0). Both are exactly the open support intervals.
  WindowEdge chi_lo{Frac(1, 1), Frac(-2, 1) * cfg.delta0};
  WindowEdge chi_hi{Frac(1, 1), Frac(-1, 1) * cfg.delta0};
  WindowEdge psi_lo{cfg.eta0, Frac()};
  WindowEdge psi_hi{Frac(2, 1) * cfg.eta0, Frac()};
  WindowEdge concl{Frac(1, 1), Frac(-2, 1) * cfg.delta0};
  const double x_1_2g =
      std::pow(static_cast<double>(cfg.X),
               1.0 - 2.0 * cfg.c.gamma());  // deviation scale X^(1-2g)

  auto parts = chunked_map<CompositionReport>(
      lo, hi + 1, std::uint64_t(1) << 16, cfg.threads,
      [&](std::uint64_t a, std::uint64_t b) {
        CompositionReport rep;
        enumerate_ps(a, b - 1, cfg.c, [&](const PSElement& e) {
          std::uint64_t n = e.m;
          ++rep.members;
          for (int h = 1; h <= cfg.k0; ++h) {
            std::uint64_t m = shift_map(n, h, cfg.c);
            Cert c1 = frac_in_open_window(m, FracQuantity::NGamma, cfg.c,
                                          cfg.X, chi_lo, chi_hi,
                                          cfg.max_precision_bits);
            if (c1 == Cert::Unresolved) {
              ++rep.unresolved;
              continue;
            }
            if (c1 == Cert::False) continue;
            Cert c2 = frac_in_open_window(m, FracQuantity::CNPow, cfg.c, cfg.X,
                                          psi_lo, psi_hi,
                                          cfg.max_precision_bits);
            if (c2 == Cert::Unresolved) {
              ++rep.unresolved;
              continue;
            }
            if (c2 == Cert::False) continue;
            ++rep.qualifying;
            for (int hs = 1; hs <= cfg.k0; ++hs) {
              ++rep.checked;
              if (shift_map(n, hs, cfg.c) !=
                  shift_map(m, static_cast<long long>(hs) - h, cfg.c))
                ++rep.failures;
            }
            Cert cc = frac_at_least(n, FracQuantity::NGamma, cfg.c, cfg.X,
                                    concl, cfg.max_precision_bits);
            if (cc == Cert::Unresolved)
              ++rep.unresolved;
            else if (cc == Cert::False)
              ++rep.frac_conclusion_failures;
            FloorResult fn = floor_c_n_pow(n, cfg.c);
            FloorResult fm = floor_c_n_pow(m, cfg.c);
            double dev = std::abs(0.5 * (fn.frac_lo + fn.frac_hi) -
                                  0.5 * (fm.frac_lo + fm.frac_hi));
            rep.max_frac_deviation = std::max(rep.max_frac_deviation, dev);
            if (dev > 10.0 * x_1_2g) ++rep.frac_conclusion_failures;
          }
        });
        return rep;
      });
  CompositionReport total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

DensityReport density_report(std::uint64_t x, const Exponent& c, int threads) {
  if (x < 10000) throw InputError("density_report: x must be at least 10^4");
  DensityReport rep;
  rep.x = x;
  // largest preimage: [n^c] <= x iff n^c < x+1
  std::uint64_t n_hi = pow_ceil(x + 1, up(c.q), up(c.p)) - 1;
  auto parts = chunked_map<std::uint64_t>(
      1, n_hi + 1, std::uint64_t(1) << 18, threads,
      [&c](std::uint64_t a, std::uint64_t b) {
        std::uint64_t cnt = 0;
        PrimeWindow pw;
        for (std::uint64_t n = a; n < b; ++n) {
          std::uint64_t m = pow_floor(n, up(c.p), up(c.q)).value;
          if (m >= 2 && pw.is_prime(m)) ++cnt;
        }
        return cnt;
      });
  for (auto v : parts) rep.count += v;
  FloorResult fx = pow_floor(x, up(c.q), up(c.p));
  double xg = static_cast<double>(fx.value) +
              0.5 * (fx.frac_lo + fx.frac_hi);
  rep.main_term = xg / std::log(static_cast<double>(x));
  rep.ratio = rep.count / rep.main_term;
  return rep;
}

}  // namespace psgap
