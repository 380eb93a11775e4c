#include "psgap/powerfloor.hpp"

#include <gmpxx.h>

#include <cmath>
#include <random>

#include "doctest.h"
#include "psgap/errors.hpp"

using namespace psgap;

namespace {

// Independent oracle: naive big-integer binary search for floor(n^(a/b)),
// kept free of the library's fast path and of mpz_root.
std::uint64_t oracle_pow_floor(std::uint64_t n, unsigned a, unsigned b) {
  mpz_class A;
  mpz_ui_pow_ui(A.get_mpz_t(), n, a);
  mpz_class lo = 0, hi = 1;
  auto le_A = [&](const mpz_class& v) {
    mpz_class vb;
    mpz_pow_ui(vb.get_mpz_t(), v.get_mpz_t(), b);
    return vb <= A;
  };
  while (le_A(hi)) hi *= 2;
  while (hi - lo > 1) {
    mpz_class mid = (lo + hi) / 2;
    if (le_A(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo.get_ui();
}

}  // namespace

TEST_CASE("pow_floor trivial and exact-hit examples") {
  // 1^c = 1
  FloorResult r1 = pow_floor(1, 11, 10);
  CHECK(r1.value == 1);
  CHECK(r1.exact_integer_hit);
  // 1024^(11/10) = 2^11 = 2048
  FloorResult r2 = pow_floor(1024, 11, 10);
  CHECK(r2.value == 2048);
  CHECK(r2.exact_integer_hit);
  CHECK(r2.frac_lo == 0.0);
  CHECK(r2.frac_hi == 0.0);
  // frozen from the binary-search oracle: floor(17^(11/10)) = 22
  CHECK(oracle_pow_floor(17, 11, 10) == 22);
  FloorResult r3 = pow_floor(17, 11, 10);
  CHECK(r3.value == 22);
  CHECK_FALSE(r3.exact_integer_hit);
  // cross-check against high-precision floating evaluation
  double f = std::pow(17.0, 1.1);
  CHECK(std::floor(f) == 22.0);
}

TEST_CASE("pow_floor agrees with the binary-search oracle") {
  std::mt19937_64 rng(42);
  const std::pair<unsigned, unsigned> exps[] = {
      {11, 10}, {10, 11}, {9, 8}, {21, 20}, {3, 2}, {7, 3}};
  for (auto [a, b] : exps) {
    for (int i = 0; i < 400; ++i) {
      std::uint64_t n = 1 + rng() % 5000000;
      FloorResult r = pow_floor(n, a, b);
      CHECK(r.value == oracle_pow_floor(n, a, b));
    }
  }
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    CHECK(pow_floor(n, 11, 10).value == oracle_pow_floor(n, 11, 10));
  }
}

TEST_CASE("frac_pow enclosures") {
  auto [l0, h0] = frac_pow(1024, 11, 10);
  CHECK(l0 == 0.0);
  CHECK(h0 == 0.0);
  auto [l1, h1] = frac_pow(1, 7, 5);
  CHECK(l1 == 0.0);
  CHECK(h1 == 0.0);
  // {2^(10/11)} ~ 0.87786, frozen from high-precision evaluation
  auto [l2, h2] = frac_pow(2, 10, 11);
  CHECK(h2 - l2 <= 0x1p-50);
  CHECK(l2 > 0.8778);
  CHECK(h2 < 0.8779);
  // enclosure brackets the long-double value
  long double v = powl(2.0L, 10.0L / 11.0L) - 1.0L;
  CHECK(static_cast<long double>(l2) <= v + 1e-15L);
  CHECK(static_cast<long double>(h2) >= v - 1e-15L);
}

TEST_CASE("floor_c_n_pow examples") {
  Exponent c = validate_exponent(11, 10);
  // n=1: c*1 = 1.1 -> floor 1
  FloorResult r1 = floor_c_n_pow(1, c);
  CHECK(r1.value == 1);
  CHECK_FALSE(r1.exact_integer_hit);
  CHECK(r1.frac_lo > 0.0999);
  CHECK(r1.frac_hi < 0.1001);
  // n = 2^110: c*n^(1/11) = 1.1*2^10 = 1126.4
  std::uint64_t n = 1;
  // 2^110 overflows u64; use n = 2^55 with c=11/10: n^(1/11) = 2^5 exactly
  n = std::uint64_t(1) << 55;
  FloorResult r2 = floor_c_n_pow(n, c);
  // (11/10)*2^5 = 35.2
  CHECK(r2.value == 35);
  CHECK_FALSE(r2.exact_integer_hit);
  // exact hit: n = 10^11 -> n^(1/11) = 10, c*10 = 11
  std::uint64_t n3 = 1;
  for (int i = 0; i < 11; ++i) n3 *= 10;
  FloorResult r3 = floor_c_n_pow(n3, c);
  CHECK(r3.value == 11);
  CHECK(r3.exact_integer_hit);
  // n = 1e5: floor(1.1 * 10^(5/11)), frozen from high-precision evaluation
  FloorResult r4 = floor_c_n_pow(100000, c);
  long double v = 1.1L * powl(10.0L, 5.0L / 11.0L);
  CHECK(r4.value == static_cast<std::uint64_t>(floorl(v)));
}

TEST_CASE("monotone and membership-bridge properties") {
  Exponent c = validate_exponent(11, 10);
  std::uint64_t prev = 0;
  for (std::uint64_t n = 1; n <= 4000; ++n) {
    std::uint64_t v = pow_floor(n, 11, 10).value;
    CHECK(v >= prev);
    if (n > 1) {
      double step = 1.1 * std::pow(static_cast<double>(n), 0.1);
      CHECK(v - prev <= static_cast<std::uint64_t>(std::ceil(step)) + 1);
    }
    prev = v;
  }
  // gamma < 1: consecutive floors differ by 0 or 1
  std::uint64_t pg = pow_floor(1, 10, 11).value;
  for (std::uint64_t n = 2; n <= 4000; ++n) {
    std::uint64_t g = pow_floor(n, 10, 11).value;
    CHECK((g - pg == 0 || g - pg == 1));
    pg = g;
  }
  (void)c;
}

TEST_CASE("input validation and budget") {
  CHECK_THROWS_AS(pow_floor(0, 11, 10), InputError);
  CHECK_THROWS_AS(pow_floor(5, 0, 10), InputError);
  std::size_t saved = bigint_bit_budget();
  set_bigint_bit_budget(64);
  CHECK_THROWS_AS(pow_floor(std::uint64_t(1) << 40, 11, 10), BudgetError);
  set_bigint_bit_budget(saved);
}

TEST_CASE("certified window comparisons") {
  Exponent c = validate_exponent(11, 10);
  // {4^(10/11)} ~ 0.52, window (0.5, 0.6) should certify True
  WindowEdge lo{Frac(1, 2), Frac()};
  WindowEdge hi{Frac(3, 5), Frac()};
  Cert r = frac_in_open_window(4, FracQuantity::NGamma, c, 1000, lo, hi, 8192);
  auto [fl, fh] = frac_pow(4, 10, 11);
  bool inside = fl > 0.5 && fh < 0.6;
  CHECK(r == (inside ? Cert::True : Cert::False));
  // exact power: {1024^{10/11}} = 0 is not in (1/2, 3/5)
  Cert r2 =
      frac_in_open_window(2048, FracQuantity::NGamma, c, 1000, lo, hi, 8192);
  CHECK(r2 == Cert::False);
  // frac_at_least with zero edge is always true
  WindowEdge zero{Frac(0, 1), Frac()};
  CHECK(frac_at_least(7, FracQuantity::NGamma, c, 1000, zero, 8192) ==
        Cert::True);
}

TEST_CASE("floor_shifted_root_pow matches direct evaluation") {
  Exponent c = validate_exponent(11, 10);
  // exact-power base: n = 2048, h = 0: (1024)^(11/10) = 2048
  CHECK(floor_shifted_root_pow(2048, 0, c, 8192) == 2048);
  // non-exact: compare against long double evaluation on modest n
  for (std::uint64_t n : {1000ull, 54321ull, 99991ull}) {
    for (long long h : {-2LL, 0LL, 3LL}) {
      long double x = powl(static_cast<long double>(n), 10.0L / 11.0L) + h;
      long double y = powl(x, 1.1L);
      std::uint64_t expect = static_cast<std::uint64_t>(floorl(y));
      CHECK(floor_shifted_root_pow(n, h, c, 8192) == expect);
    }
  }
}
