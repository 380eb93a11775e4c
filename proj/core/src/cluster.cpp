#include "psgap/cluster.hpp"

#include <cmath>
#include <deque>

#include "psgap/errors.hpp"
#include "psgap/parallel.hpp"
#include "psgap/powerfloor.hpp"
#include "psgap/primes.hpp"
#include "psgap/psprimes.hpp"

namespace psgap {

namespace {

unsigned up(std::uint64_t v) { return static_cast<unsigned>(v); }

double norm_scale(std::uint64_t p, const Exponent& c) {
  // p^(1-gamma)
  return std::pow(static_cast<double>(p),
                  1.0 - static_cast<double>(c.q) / static_cast<double>(c.p));
}

// scan one subrange; windows starting in [a, b]
std::vector<ClusterRecord> scan_chunk(const Exponent& c, int k0,
                                      std::uint64_t a, std::uint64_t b,
                                      int min_primes) {
  std::vector<ClusterRecord> out;
  PrimeWindow pw;
  std::deque<std::pair<std::uint64_t, bool>> win;  // (value, is_prime)
  for (int i = 0; i <= k0; ++i) {
    std::uint64_t v = pow_floor(a + i, up(c.p), up(c.q)).value;
    win.emplace_back(v, v >= 2 && pw.is_prime(v));
  }
  std::vector<std::uint64_t> prev_primes;
  for (std::uint64_t n = a;; ++n) {
    int cnt = 0;
    for (const auto& [v, isp] : win) cnt += isp;
    if (cnt >= min_primes) {
      std::vector<std::uint64_t> primes;
      std::vector<int> offs;
      for (int i = 0; i <= k0; ++i) {
        if (win[i].second) {
          primes.push_back(win[i].first);
          offs.push_back(i);
        }
      }
      if (primes != prev_primes) {
        ClusterRecord rec;
        rec.n = n;
        rec.c = c;
        rec.k0 = k0;
        rec.prime_offsets = std::move(offs);
        rec.in_progression = true;
        for (int i = 2; i <= k0; ++i) {
          if (win[i].first - win[i - 1].first !=
              win[1].first - win[0].first) {
            rec.in_progression = false;
            break;
          }
        }
        rec.normalized_span =
            primes.size() > 1
                ? static_cast<double>(primes.back() - primes.front()) /
                      norm_scale(primes.front(), c)
                : 0.0;
        rec.values = primes;
        prev_primes = std::move(primes);
        out.push_back(std::move(rec));
      }
    }
    if (n == b) break;
    std::uint64_t v = pow_floor(n + k0 + 1, up(c.p), up(c.q)).value;
    win.pop_front();
    win.emplace_back(v, v >= 2 && pw.is_prime(v));
  }
  return out;
}

}  // namespace

void scan_clusters(const Exponent& c, int k0, std::uint64_t n_lo,
                   std::uint64_t n_hi, int min_primes,
                   const std::function<void(const ClusterRecord&)>& yield,
                   int threads) {
  if (n_lo < 1 || n_lo > n_hi) throw InputError("scan_clusters: bad range");
  if (k0 < 0) throw InputError("scan_clusters: k0 must be >= 0");
  if (min_primes < 1) throw InputError("scan_clusters: min_primes >= 1");
  if (n_hi > 100000000ull / (k0 + 1))
    throw BudgetError("scan_clusters: range exceeds the work budget");
  auto parts = chunked_map<std::vector<ClusterRecord>>(
      n_lo, n_hi + 1, std::uint64_t(1) << 16, threads,
      [&](std::uint64_t a, std::uint64_t b) {
        return scan_chunk(c, k0, a, b - 1, min_primes);
      });
  // merge in range order, deduplicating across chunk seams
  const std::vector<std::uint64_t>* prev = nullptr;
  for (const auto& chunk : parts) {
    for (const auto& rec : chunk) {
      if (prev && rec.values == *prev) continue;
      yield(rec);
      prev = &rec.values;
    }
  }
}

std::vector<ClusterRecord> scan_clusters_vec(const Exponent& c, int k0,
                                             std::uint64_t n_lo,
                                             std::uint64_t n_hi,
                                             int min_primes, int threads) {
  std::vector<ClusterRecord> out;
  scan_clusters(c, k0, n_lo, n_hi, min_primes,
                [&](const ClusterRecord& r) { out.push_back(r); }, threads);
  return out;
}

GapStats gap_stats(const Exponent& c, std::uint64_t x_max, double tau,
                   int threads) {
  if (x_max > 100000000ull) throw BudgetError("gap_stats: x_max too large");
  GapStats stats;
  stats.tau = tau > 0 ? tau : 2.0 * c.c();
  // collect PS primes in value order, chunked over preimages
  std::uint64_t n_hi = pow_ceil(x_max + 1, up(c.q), up(c.p));
  if (n_hi > 0) --n_hi;
  auto parts = chunked_map<std::vector<std::uint64_t>>(
      1, n_hi + 1, std::uint64_t(1) << 18, threads,
      [&c, x_max](std::uint64_t a, std::uint64_t b) {
        std::vector<std::uint64_t> primes;
        PrimeWindow pw;
        for (std::uint64_t n = a; n < b; ++n) {
          std::uint64_t m = pow_floor(n, up(c.p), up(c.q)).value;
          if (m >= 2 && m <= x_max && pw.is_prime(m)) primes.push_back(m);
        }
        return primes;
      });
  std::uint64_t prev = 0;
  const double cc = c.c();
  for (const auto& chunk : parts) {
    for (std::uint64_t p : chunk) {
      if (prev != 0) {
        GapRecord rec;
        rec.p = prev;
        rec.p_next = p;
        rec.normalized_gap =
            static_cast<double>(p - prev) / norm_scale(prev, c);
        if (rec.normalized_gap <= stats.tau) ++stats.below_tau;
        // p' - p >= [(n+1)^c] - [n^c] >= c n^(c-1) - 1 >= c p^(1-g) - 1,
        // so the normalized gap provably exceeds c - p^(g-1)
        double floor_bound = cc - 1.0 / norm_scale(prev, c);
        if (rec.normalized_gap < floor_bound) ++stats.lower_bound_violations;
        stats.records.push_back(rec);
      }
      prev = p;
    }
  }
  return stats;
}

WitnessResult witness_search(const SieveConfig& cfg, int m,
                              std::uint64_t n_start, std::uint64_t budget) {
  if (m < 0) throw InputError("witness_search: m must be >= 0");
  WitnessResult res;
  std::uint64_t lo = std::max<std::uint64_t>(n_start, 1);
  std::uint64_t cap = std::min<std::uint64_t>(
      budget / (cfg.k0 + 1), 100000000ull / (cfg.k0 + 1));
  while (lo <= cap && !res.found) {
    std::uint64_t hi = std::min<std::uint64_t>(cap, lo * 2);
    scan_clusters(cfg.c, cfg.k0, lo, hi, m + 1,
                  [&](const ClusterRecord& rec) {
                    if (!res.found) {
                      res.found = true;
                      res.record = rec;
                    }
                  },
                  cfg.threads);
    res.scanned_to = hi;
    if (hi == cap) break;
    lo = hi + 1;
  }
  if (res.found) {
    // shift-map consistency: with v = [n^c] and {n^c} > 0,
    // s_h(v) = [(n+h)^c] for every h
    std::uint64_t n = res.record.n;
    FloorResult f0 = pow_floor(n, up(cfg.c.p), up(cfg.c.q));
    if (!f0.exact_integer_hit) {
      for (int h = 0; h <= cfg.k0; ++h) {
        ++res.shift_checked;
        std::uint64_t direct =
            pow_floor(n + h, up(cfg.c.p), up(cfg.c.q)).value;
        if (shift_map(f0.value, h, cfg.c) != direct) ++res.shift_mismatches;
      }
    }
  }
  return res;
}

}  // namespace psgap
