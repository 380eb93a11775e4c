#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace psgap {

/// Deterministic chunked map over [lo, hi): the range is cut into fixed-size
/// chunks independent of the thread count, workers pull chunks from an atomic
/// counter, and results land in chunk order. Numeric output therefore does
/// not depend on `threads`.
template <typename T, typename Fn>
std::vector<T> chunked_map(std::uint64_t lo, std::uint64_t hi,
                           std::uint64_t chunk, int threads, Fn fn) {
  std::vector<T> out;
  if (hi <= lo) return out;
  if (chunk == 0) chunk = 1;
  std::uint64_t nchunks = (hi - lo + chunk - 1) / chunk;
  out.resize(nchunks);
  if (threads <= 1 || nchunks == 1) {
    for (std::uint64_t i = 0; i < nchunks; ++i) {
      std::uint64_t a = lo + i * chunk;
      std::uint64_t b = std::min(hi, a + chunk);
      out[i] = fn(a, b);
    }
    return out;
  }
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::uint64_t i = next.fetch_add(1);
      if (i >= nchunks) return;
      std::uint64_t a = lo + i * chunk;
      std::uint64_t b = std::min(hi, a + chunk);
      out[i] = fn(a, b);
    }
  };
  std::vector<std::thread> pool;
  int nt = std::min<std::uint64_t>(threads, nchunks);
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

/// Neumaier compensated accumulator; merge order must be deterministic.
struct Kahan {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  void merge(const Kahan& o) {
    add(o.sum);
    comp += o.comp;
  }
  double value() const { return sum + comp; }
};

}  // namespace psgap
