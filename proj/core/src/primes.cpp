#include "psgap/primes.hpp"

#include <cmath>
#include <mutex>
#include <numeric>

#include "psgap/errors.hpp"
#include "psgap/parallel.hpp"

namespace psgap {

namespace {

std::vector<std::uint32_t> g_base_primes;
std::uint32_t g_base_limit = 0;
std::mutex g_base_mutex;

void extend_base(std::uint32_t limit) {
  if (limit <= g_base_limit) return;
  limit = std::max<std::uint32_t>(limit, 1 << 16);
  std::vector<std::uint8_t> comp(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (!comp[i]) {
      primes.push_back(i);
      for (std::uint64_t j = std::uint64_t(i) * i; j <= limit; j += i)
        comp[j] = 1;
    }
  }
  g_base_primes = std::move(primes);
  g_base_limit = limit;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

const std::vector<std::uint32_t>& small_primes(std::uint32_t limit) {
  std::lock_guard<std::mutex> lk(g_base_mutex);
  extend_base(limit);
  return g_base_primes;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic witness set for all 64-bit n
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

PrimeSegment sieve_segment(std::uint64_t lo, std::uint64_t hi,
                           std::uint64_t max_span) {
  if (lo >= hi) throw InputError("sieve_segment: empty range");
  if (hi - lo > max_span) throw BudgetError("sieve_segment: range too large");
  PrimeSegment seg;
  seg.lo = lo;
  seg.hi = hi;
  std::uint64_t span = hi - lo;
  seg.bits.assign((span + 63) / 64, ~std::uint64_t(0));
  auto clear_bit = [&](std::uint64_t n) {
    std::uint64_t i = n - lo;
    seg.bits[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
  };
  for (std::uint64_t n = lo; n < std::min<std::uint64_t>(hi, 2); ++n)
    clear_bit(n);
  std::uint64_t root = static_cast<std::uint64_t>(
      std::sqrt(static_cast<double>(hi - 1)));
  while (root > 0 && (unsigned __int128)root * root > hi - 1) --root;
  while ((unsigned __int128)(root + 1) * (root + 1) <= hi - 1) ++root;
  const auto& primes = small_primes(static_cast<std::uint32_t>(root));
  for (std::uint32_t p : primes) {
    if (std::uint64_t(p) * p >= hi) break;
    std::uint64_t start = std::max<std::uint64_t>(
        std::uint64_t(p) * p, ((lo + p - 1) / p) * p);
    for (std::uint64_t j = start; j < hi; j += p) clear_bit(j);
  }
  return seg;
}

bool PrimeWindow::is_prime(std::uint64_t n) {
  if (seg_.bits.empty() || n < seg_.lo || n >= seg_.hi) {
    if (!seg_.bits.empty() && n < seg_.lo)
      throw InputError("PrimeWindow: queries must be nondecreasing");
    seg_ = sieve_segment(n, n + segment_size_, segment_size_);
  }
  return seg_.is_prime(n);
}

double varpi(std::uint64_t n) {
  if (n < 2 || !is_prime_u64(n)) return 0.0;
  return std::log(static_cast<double>(n));
}

double lambda_vm(std::uint64_t n) {
  if (n < 2) return 0.0;
  // strip the smallest prime factor, then check n = p^k
  std::uint64_t p = 0, m = n;
  const auto& primes = small_primes(1 << 16);
  for (std::uint32_t d : primes) {
    if (std::uint64_t(d) * d > m) break;
    if (m % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) {
    if (m <= (std::uint64_t(1) << 32) || is_prime_u64(m))
      return std::log(static_cast<double>(n));
    // composite with every factor above 2^16: p^2 or p^3 still possible
    for (int k : {2, 3}) {
      auto r = static_cast<std::uint64_t>(
          std::llround(std::pow(static_cast<double>(m), 1.0 / k)));
      for (std::uint64_t cand = r > 1 ? r - 1 : 1; cand <= r + 1; ++cand) {
        unsigned __int128 pk = 1;
        for (int i = 0; i < k; ++i) pk *= cand;
        if (pk == m && is_prime_u64(cand))
          return std::log(static_cast<double>(cand));
      }
    }
    return 0.0;
  }
  while (m % p == 0) m /= p;
  return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

std::vector<double> varpi_table(std::uint64_t lo, std::uint64_t hi) {
  std::vector<double> out(hi - lo, 0.0);
  const std::uint64_t step = std::uint64_t(1) << 24;
  for (std::uint64_t a = lo; a < hi; a += step) {
    std::uint64_t b = std::min(hi, a + step);
    PrimeSegment seg = sieve_segment(std::max<std::uint64_t>(a, 2), b);
    for (std::uint64_t n = seg.lo; n < b; ++n)
      if (seg.is_prime(n)) out[n - lo] = std::log(static_cast<double>(n));
  }
  return out;
}

std::vector<double> lambda_table(std::uint64_t lo, std::uint64_t hi) {
  std::vector<double> out = varpi_table(lo, hi);
  // prime powers p^k (k >= 2) in range
  std::uint64_t root = static_cast<std::uint64_t>(
      std::ceil(std::sqrt(static_cast<double>(hi))));
  const auto& primes = small_primes(static_cast<std::uint32_t>(root + 1));
  for (std::uint32_t p : primes) {
    if (std::uint64_t(p) * p >= hi) break;
    unsigned __int128 pk = std::uint64_t(p) * p;
    while (pk < hi) {
      if (pk >= lo)
        out[static_cast<std::uint64_t>(pk) - lo] =
            std::log(static_cast<double>(p));
      pk *= p;
    }
  }
  return out;
}

ProgressionSum progression_weight_sum(std::uint64_t X, std::uint64_t W,
                                      std::uint64_t b, int threads) {
  if (X < 1000) throw InputError("progression_weight_sum: X >= 10^3 required");
  if (W == 0) throw InputError("progression_weight_sum: W must be positive");
  ProgressionSum res;
  res.gcd_warning = std::gcd(b % W == 0 ? W : b % W, W) > 1 && W > 1;
  struct Part {
    Kahan sum;
    std::uint64_t terms = 0;
  };
  auto parts = chunked_map<Part>(
      X, 2 * X + 1, std::uint64_t(1) << 22, threads,
      [&](std::uint64_t a, std::uint64_t e) {
        Part part;
        PrimeSegment seg = sieve_segment(a, e);
        for (std::uint64_t n = a; n < e; ++n) {
          if (n % W != b % W) continue;
          if (seg.is_prime(n)) {
            part.sum.add(std::log(static_cast<double>(n)));
            ++part.terms;
          }
        }
        return part;
      });
  Kahan total;
  for (const auto& p : parts) {
    total.merge(p.sum);
    res.terms += p.terms;
  }
  res.sum = total.value();
  return res;
}

std::vector<std::int8_t> mobius_table(std::uint32_t limit) {
  std::vector<std::int8_t> mu(limit + 1, 1);
  std::vector<std::uint32_t> spf(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  mu[0] = 0;
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (!spf[i]) {
      spf[i] = i;
      mu[i] = -1;
      primes.push_back(i);
    }
    for (std::uint32_t p : primes) {
      if (p > spf[i] || std::uint64_t(i) * p > limit) break;
      spf[i * p] = p;
      mu[i * p] = (p == spf[i]) ? 0 : -mu[i];
    }
  }
  return mu;
}

}  // namespace psgap
