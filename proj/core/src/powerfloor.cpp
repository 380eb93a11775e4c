#include "psgap/powerfloor.hpp"

#include <cstdint>

#define MPFR_USE_INTMAX_T
#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <limits>

#include "psgap/errors.hpp"

namespace psgap {

namespace {

std::size_t g_budget_bits = std::size_t(1) << 20;

struct Scratch {
  mpz_class A, V, V1;
};
Scratch& scratch() {
  thread_local Scratch s;
  return s;
}

void pow_checked(mpz_class& out, std::uint64_t base, unsigned exp) {
  if (base == 0) throw InputError("pow_floor: base must be positive");
  double bits = exp * std::log2(static_cast<double>(base)) + 1;
  if (bits > static_cast<double>(g_budget_bits))
    throw BudgetError("pow_floor: n^a exceeds big-integer bit budget");
  mpz_class b;
  mpz_import(b.get_mpz_t(), 1, 1, sizeof(base), 0, 0, &base);
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), exp);
}

std::uint64_t mpz_to_u64(const mpz_class& z) {
  if (mpz_sizeinbase(z.get_mpz_t(), 2) > 64)
    throw InputError("pow_floor: result does not fit in 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, z.get_mpz_t());
  return out;
}

// v is the floor of A^(1/b) iff v^b <= A < (v+1)^b.
bool certify_root(const mpz_class& A, unsigned b, std::uint64_t v,
                  bool& exact) {
  Scratch& s = scratch();
  mpz_ui_pow_ui(s.V.get_mpz_t(), v, b);
  int c1 = mpz_cmp(s.V.get_mpz_t(), A.get_mpz_t());
  if (c1 > 0) return false;
  mpz_ui_pow_ui(s.V1.get_mpz_t(), v + 1, b);
  if (mpz_cmp(s.V1.get_mpz_t(), A.get_mpz_t()) <= 0) return false;
  exact = (c1 == 0);
  return true;
}

// Exact floor(A^(1/b)). Double estimate first; big-integer comparison is the
// certificate, with mpz_rootrem as the fallback for a bad estimate.
std::uint64_t root_floor(const mpz_class& A, unsigned b, bool& exact) {
  double ad = mpz_get_d(A.get_mpz_t());
  std::uint64_t v0 = 0;
  if (std::isfinite(ad) && ad > 0) {
    long double est = expl(logl(static_cast<long double>(ad)) / b);
    if (est < 1.8e19L) v0 = static_cast<std::uint64_t>(est);
  }
  for (int d = -1; d <= 1; ++d) {
    if (v0 == 0 && d < 0) continue;
    std::uint64_t cand = v0 + static_cast<std::uint64_t>(d);
    if (cand == 0) continue;
    if (certify_root(A, b, cand, exact)) return cand;
  }
  mpz_class r, rem;
  mpz_rootrem(r.get_mpz_t(), rem.get_mpz_t(), A.get_mpz_t(), b);
  exact = (mpz_sgn(rem.get_mpz_t()) == 0);
  return mpz_to_u64(r);
}

constexpr double kFracWidth = 0x1p-50;

// Enclosure of A^(1/b)/q - v for a certified non-exact floor v (q = 1 for the
// plain power case). Always resolves: width halves as precision doubles.
std::pair<double, double> frac_enclosure(const mpz_class& A, unsigned b,
                                         unsigned long q, std::uint64_t v) {
  for (mpfr_prec_t prec = 128; prec <= 65536; prec *= 2) {
    mpfr_t lo, hi;
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_set_z(lo, A.get_mpz_t(), MPFR_RNDD);
    mpfr_rootn_ui(lo, lo, b, MPFR_RNDD);
    if (q != 1) mpfr_div_ui(lo, lo, q, MPFR_RNDD);
    mpfr_sub_ui(lo, lo, v, MPFR_RNDD);
    mpfr_set_z(hi, A.get_mpz_t(), MPFR_RNDU);
    mpfr_rootn_ui(hi, hi, b, MPFR_RNDU);
    if (q != 1) mpfr_div_ui(hi, hi, q, MPFR_RNDU);
    mpfr_sub_ui(hi, hi, v, MPFR_RNDU);
    double flo = mpfr_get_d(lo, MPFR_RNDD);
    double fhi = mpfr_get_d(hi, MPFR_RNDU);
    mpfr_clear(lo);
    mpfr_clear(hi);
    flo = std::max(flo, 0.0);
    fhi = std::min(fhi, 1.0);
    if (fhi - flo <= kFracWidth) return {flo, fhi};
  }
  throw PrecisionError("frac_pow: enclosure did not narrow", 0);
}

}  // namespace

void set_bigint_bit_budget(std::size_t bits) { g_budget_bits = bits; }
std::size_t bigint_bit_budget() { return g_budget_bits; }

FloorResult pow_floor(std::uint64_t n, unsigned a, unsigned b) {
  if (n == 0 || a == 0 || b == 0)
    throw InputError("pow_floor: n, a, b must be positive");
  if (n == 1) return {1, true, 0.0, 0.0};
  Scratch& s = scratch();
  pow_checked(s.A, n, a);
  bool exact = false;
  std::uint64_t v = root_floor(s.A, b, exact);
  FloorResult r;
  r.value = v;
  r.exact_integer_hit = exact;
  if (!exact) {
    auto [flo, fhi] = frac_enclosure(s.A, b, 1, v);
    r.frac_lo = flo;
    r.frac_hi = fhi;
  }
  return r;
}

std::pair<double, double> frac_pow(std::uint64_t n, unsigned a, unsigned b) {
  FloorResult r = pow_floor(n, a, b);
  return {r.frac_lo, r.frac_hi};
}

std::uint64_t pow_ceil(std::uint64_t n, unsigned a, unsigned b) {
  FloorResult r = pow_floor(n, a, b);
  return r.value + (r.exact_integer_hit ? 0 : 1);
}

FloorResult floor_c_n_pow(std::uint64_t n, const Exponent& c) {
  if (n == 0) throw InputError("floor_c_n_pow: n must be positive");
  const unsigned p = static_cast<unsigned>(c.p);
  const unsigned q = static_cast<unsigned>(c.q);
  // (p/q) n^((p-q)/p) = (p^p n^(p-q))^(1/p) / q
  Scratch& s = scratch();
  pow_checked(s.A, n, p - q);
  mpz_class P;
  mpz_ui_pow_ui(P.get_mpz_t(), p, p);
  mpz_class A = P * s.A;
  bool root_exact = false;
  std::uint64_t w = root_floor(A, p, root_exact);
  FloorResult r;
  r.value = w / q;
  r.exact_integer_hit = root_exact && (w % q == 0);
  if (!r.exact_integer_hit) {
    auto [flo, fhi] = frac_enclosure(A, p, q, r.value);
    r.frac_lo = flo;
    r.frac_hi = fhi;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Certified window comparisons
// ---------------------------------------------------------------------------

namespace {

struct Iv {
  mpfr_t lo, hi;
  explicit Iv(mpfr_prec_t prec) {
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
  }
  ~Iv() {
    mpfr_clear(lo);
    mpfr_clear(hi);
  }
  Iv(const Iv&) = delete;
  Iv& operator=(const Iv&) = delete;
};

void set_frac_iv(Iv& out, const Frac& f, mpfr_rnd_t) {
  mpfr_set_si(out.lo, f.num, MPFR_RNDD);
  mpfr_div_si(out.lo, out.lo, f.den, MPFR_RNDD);
  mpfr_set_si(out.hi, f.num, MPFR_RNDU);
  mpfr_div_si(out.hi, out.hi, f.den, MPFR_RNDU);
}

// u + v * X^((q-p)/p)
void edge_enclosure(Iv& out, const WindowEdge& e, const Exponent& c,
                    std::uint64_t X, mpfr_prec_t prec) {
  set_frac_iv(out, e.u, MPFR_RNDN);
  if (e.v.is_zero()) return;
  mpz_class Xp;
  pow_checked(Xp, X, static_cast<unsigned>(c.p - c.q));
  Iv root(prec), inv(prec), term(prec);
  mpfr_set_z(root.lo, Xp.get_mpz_t(), MPFR_RNDD);
  mpfr_rootn_ui(root.lo, root.lo, static_cast<unsigned long>(c.p), MPFR_RNDD);
  mpfr_set_z(root.hi, Xp.get_mpz_t(), MPFR_RNDU);
  mpfr_rootn_ui(root.hi, root.hi, static_cast<unsigned long>(c.p), MPFR_RNDU);
  // 1/root flips the interval
  mpfr_ui_div(inv.lo, 1, root.hi, MPFR_RNDD);
  mpfr_ui_div(inv.hi, 1, root.lo, MPFR_RNDU);
  if (e.v.num >= 0) {
    mpfr_mul_si(term.lo, inv.lo, e.v.num, MPFR_RNDD);
    mpfr_mul_si(term.hi, inv.hi, e.v.num, MPFR_RNDU);
  } else {
    mpfr_mul_si(term.lo, inv.hi, e.v.num, MPFR_RNDD);
    mpfr_mul_si(term.hi, inv.lo, e.v.num, MPFR_RNDU);
  }
  if (e.v.den != 1) {
    mpfr_div_si(term.lo, term.lo, e.v.den, MPFR_RNDD);
    mpfr_div_si(term.hi, term.hi, e.v.den, MPFR_RNDU);
  }
  mpfr_add(out.lo, out.lo, term.lo, MPFR_RNDD);
  mpfr_add(out.hi, out.hi, term.hi, MPFR_RNDU);
}

struct FracExact {
  bool exact = false;        // fractional part is exactly zero
  std::uint64_t floor_value = 0;
  mpz_class A;               // radicand
  unsigned root = 1;         // A^(1/root)
  unsigned long divisor = 1; // ... / divisor
};

FracExact frac_setup(std::uint64_t n, FracQuantity kind, const Exponent& c) {
  FracExact fx;
  if (kind == FracQuantity::NGamma) {
    pow_checked(fx.A, n, static_cast<unsigned>(c.q));
    fx.root = static_cast<unsigned>(c.p);
    bool ex = false;
    fx.floor_value = root_floor(fx.A, fx.root, ex);
    fx.exact = ex;
  } else {
    mpz_class Np;
    pow_checked(Np, n, static_cast<unsigned>(c.p - c.q));
    mpz_class P;
    mpz_ui_pow_ui(P.get_mpz_t(), static_cast<unsigned long>(c.p),
                  static_cast<unsigned long>(c.p));
    fx.A = P * Np;
    fx.root = static_cast<unsigned>(c.p);
    fx.divisor = static_cast<unsigned long>(c.q);
    bool ex = false;
    std::uint64_t w = root_floor(fx.A, fx.root, ex);
    fx.floor_value = w / fx.divisor;
    fx.exact = ex && (w % fx.divisor == 0);
  }
  return fx;
}

void frac_iv(Iv& out, const FracExact& fx, mpfr_prec_t prec) {
  if (fx.exact) {
    mpfr_set_zero(out.lo, 1);
    mpfr_set_zero(out.hi, 1);
    return;
  }
  mpfr_set_z(out.lo, fx.A.get_mpz_t(), MPFR_RNDD);
  mpfr_rootn_ui(out.lo, out.lo, fx.root, MPFR_RNDD);
  if (fx.divisor != 1) mpfr_div_ui(out.lo, out.lo, fx.divisor, MPFR_RNDD);
  mpfr_sub_ui(out.lo, out.lo, fx.floor_value, MPFR_RNDD);
  mpfr_set_z(out.hi, fx.A.get_mpz_t(), MPFR_RNDU);
  mpfr_rootn_ui(out.hi, out.hi, fx.root, MPFR_RNDU);
  if (fx.divisor != 1) mpfr_div_ui(out.hi, out.hi, fx.divisor, MPFR_RNDU);
  mpfr_sub_ui(out.hi, out.hi, fx.floor_value, MPFR_RNDU);
  if (mpfr_sgn(out.lo) < 0) mpfr_set_zero(out.lo, 1);
  (void)prec;
}

Cert cert_greater(const Iv& a, const Iv& b) {
  if (mpfr_cmp(a.lo, b.hi) > 0) return Cert::True;
  if (mpfr_cmp(a.hi, b.lo) <= 0) return Cert::False;
  return Cert::Unresolved;
}

Cert cert_less(const Iv& a, const Iv& b) {
  if (mpfr_cmp(a.hi, b.lo) < 0) return Cert::True;
  if (mpfr_cmp(a.lo, b.hi) >= 0) return Cert::False;
  return Cert::Unresolved;
}

Cert cert_at_least(const Iv& a, const Iv& b) {
  if (mpfr_cmp(a.lo, b.hi) >= 0) return Cert::True;
  if (mpfr_cmp(a.hi, b.lo) < 0) return Cert::False;
  return Cert::Unresolved;
}

}  // namespace

double WindowEdge::approx(const Exponent& c, std::uint64_t X) const {
  double xg = std::pow(static_cast<double>(X),
                       (static_cast<double>(c.q) - static_cast<double>(c.p)) /
                           static_cast<double>(c.p));
  return u.to_double() + v.to_double() * xg;
}

double edge_value(const WindowEdge& e, const Exponent& c, std::uint64_t X) {
  if (e.v.is_zero()) return e.u.to_double();
  Iv iv(256);
  edge_enclosure(iv, e, c, X, 256);
  return mpfr_get_d(iv.lo, MPFR_RNDN);
}

Cert frac_in_open_window(std::uint64_t n, FracQuantity kind, const Exponent& c,
                         std::uint64_t X, const WindowEdge& lo,
                         const WindowEdge& hi, int max_bits) {
  FracExact fx = frac_setup(n, kind, c);
  for (mpfr_prec_t prec = 128; prec <= max_bits; prec *= 2) {
    Iv f(prec), L(prec), H(prec);
    frac_iv(f, fx, prec);
    edge_enclosure(L, lo, c, X, prec);
    edge_enclosure(H, hi, c, X, prec);
    Cert a = cert_greater(f, L);
    Cert b = cert_less(f, H);
    if (a == Cert::False || b == Cert::False) return Cert::False;
    if (a == Cert::True && b == Cert::True) return Cert::True;
  }
  return Cert::Unresolved;
}

Cert frac_at_least(std::uint64_t n, FracQuantity kind, const Exponent& c,
                   std::uint64_t X, const WindowEdge& edge, int max_bits) {
  FracExact fx = frac_setup(n, kind, c);
  for (mpfr_prec_t prec = 128; prec <= max_bits; prec *= 2) {
    Iv f(prec), E(prec);
    frac_iv(f, fx, prec);
    edge_enclosure(E, edge, c, X, prec);
    Cert a = cert_at_least(f, E);
    if (a != Cert::Unresolved) return a;
  }
  return Cert::Unresolved;
}

std::uint64_t floor_shifted_root_pow(std::uint64_t n, long long h,
                                     const Exponent& c, int max_bits) {
  if (h == 0) return n;  // (n^(q/p))^(p/q) = n exactly
  FloorResult rg = pow_floor(n, static_cast<unsigned>(c.q),
                             static_cast<unsigned>(c.p));
  if (rg.exact_integer_hit) {
    // n^(q/p) integral: the shifted base is an integer
    long long base = static_cast<long long>(rg.value) + h;
    if (base < 1) throw InputError("floor_shifted_root_pow: base below 1");
    return pow_floor(static_cast<std::uint64_t>(base),
                     static_cast<unsigned>(c.p), static_cast<unsigned>(c.q))
        .value;
  }
  mpz_class A;
  pow_checked(A, n, static_cast<unsigned>(c.q));
  for (mpfr_prec_t prec = 128; prec <= max_bits; prec *= 2) {
    Iv x(prec), y(prec);
    mpfr_set_z(x.lo, A.get_mpz_t(), MPFR_RNDD);
    mpfr_rootn_ui(x.lo, x.lo, static_cast<unsigned long>(c.p), MPFR_RNDD);
    mpfr_add_si(x.lo, x.lo, h, MPFR_RNDD);
    mpfr_set_z(x.hi, A.get_mpz_t(), MPFR_RNDU);
    mpfr_rootn_ui(x.hi, x.hi, static_cast<unsigned long>(c.p), MPFR_RNDU);
    mpfr_add_si(x.hi, x.hi, h, MPFR_RNDU);
    if (mpfr_sgn(x.lo) <= 0)
      throw InputError("floor_shifted_root_pow: base below 0");
    mpfr_pow_ui(y.lo, x.lo, static_cast<unsigned long>(c.p), MPFR_RNDD);
    mpfr_rootn_ui(y.lo, y.lo, static_cast<unsigned long>(c.q), MPFR_RNDD);
    mpfr_pow_ui(y.hi, x.hi, static_cast<unsigned long>(c.p), MPFR_RNDU);
    mpfr_rootn_ui(y.hi, y.hi, static_cast<unsigned long>(c.q), MPFR_RNDU);
    mpfr_floor(y.lo, y.lo);
    mpfr_floor(y.hi, y.hi);
    if (mpfr_cmp(y.lo, y.hi) == 0 && mpfr_fits_uintmax_p(y.lo, MPFR_RNDZ))
      return static_cast<std::uint64_t>(mpfr_get_uj(y.lo, MPFR_RNDZ));
  }
  throw PrecisionError("floor_shifted_root_pow: unresolved at precision cap", n);
}

}  // namespace psgap
