#include "psgap/params.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "psgap/errors.hpp"

namespace psgap {

namespace {

Frac make_frac_128(__int128 n, __int128 d) {
  if (d == 0) throw InputError("Frac: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 a = n < 0 ? -n : n, b = d;
  while (b) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 0) {
    n /= a;
    d /= a;
  }
  constexpr __int128 lim = __int128(1) << 62;
  if (n >= lim || n <= -lim || d >= lim)
    throw InputError("Frac: overflow after reduction");
  Frac f;
  f.num = static_cast<long long>(n);
  f.den = static_cast<long long>(d);
  return f;
}

}  // namespace

Frac::Frac(long long n, long long d) { *this = make_frac_128(n, d); }

Frac Frac::from_double(double x) {
  if (!std::isfinite(x)) throw InputError("Frac: non-finite double");
  if (x == 0.0) return Frac();
  int e = 0;
  double m = std::frexp(x, &e);  // x = m * 2^e, |m| in [0.5, 1)
  long long num = static_cast<long long>(std::ldexp(m, 53));
  int shift = e - 53;
  __int128 n = num, d = 1;
  if (shift >= 0)
    n <<= shift;
  else
    d <<= -shift;
  return make_frac_128(n, d);
}

Frac Frac::operator+(const Frac& o) const {
  return make_frac_128(__int128(num) * o.den + __int128(o.num) * den,
                       __int128(den) * o.den);
}
Frac Frac::operator-(const Frac& o) const {
  return make_frac_128(__int128(num) * o.den - __int128(o.num) * den,
                       __int128(den) * o.den);
}
Frac Frac::operator*(const Frac& o) const {
  return make_frac_128(__int128(num) * o.num, __int128(den) * o.den);
}
Frac Frac::operator/(const Frac& o) const {
  if (o.num == 0) throw InputError("Frac: division by zero");
  return make_frac_128(__int128(num) * o.den, __int128(den) * o.num);
}

std::string Exponent::str() const {
  return std::to_string(p) + "/" + std::to_string(q);
}

Exponent validate_exponent(std::uint64_t p, std::uint64_t q) {
  if (p == 0 || q == 0) throw InputError("exponent: p and q must be positive");
  std::uint64_t g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (p <= q) throw InputError("exponent: c = p/q must exceed 1");
  Exponent e;
  e.p = p;
  e.q = q;
  e.theorem_mode = (8 * p < 9 * q);  // 1 < c < 9/8, both bounds strict
  return e;
}

Exponent parse_exponent(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos)
    throw InputError("exponent: expected p/q, got '" + s + "'");
  std::uint64_t p = std::strtoull(s.substr(0, slash).c_str(), nullptr, 10);
  std::uint64_t q = std::strtoull(s.substr(slash + 1).c_str(), nullptr, 10);
  return validate_exponent(p, q);
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::uint64_t primorial_upto(int w0) {
  std::uint64_t w = 1;
  for (int p = 2; p <= w0; ++p) {
    bool prime = p >= 2;
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) {
        prime = false;
        break;
      }
    if (prime) {
      if (w > std::uint64_t(-1) / std::uint64_t(p))
        throw InputError("W: primorial overflows 64 bits");
      w *= std::uint64_t(p);
    }
  }
  return w;
}

SieveConfig derive_config(const Exponent& c, int k0, int m, std::uint64_t X,
                          const ConfigOverrides& ov, bool membership_only) {
  if (X < 1000) throw InputError("config: X must be at least 10^3");
  if (k0 < 1) throw InputError("config: k0 must be at least 1");
  if (m < 1) throw InputError("config: m must be at least 1");
  if (!c.theorem_mode && !membership_only)
    throw InputError("config: c = " + c.str() +
                     " outside (1, 9/8); pass membership-only to allow");

  SieveConfig cfg;
  cfg.c = c;
  cfg.k0 = k0;
  cfg.m = m;
  cfg.X = X;

  const long long p = static_cast<long long>(c.p);
  const long long q = static_cast<long long>(c.q);
  // sigma0 = min(c-1, 9-8c)/200 = min(p-q, 9q-8p)/(200 q); positive iff 1<c<9/8
  long long n1 = p - q, n2 = 9 * q - 8 * p;
  cfg.sigma0_frac = Frac(std::min(n1, n2), 200 * q);
  cfg.sigma0 = cfg.sigma0_frac.to_double();
  cfg.delta0 = Frac(p, 9 * q);
  cfg.eta0 = cfg.delta0 * Frac(p, q) / Frac(16LL * k0, 1);

  // window inequality used throughout: 2(k0+1) eta0 < c delta0 / 2
  Frac lhs = Frac(2LL * (k0 + 1), 1) * cfg.eta0;
  Frac rhs = Frac(p, q) * cfg.delta0 / Frac(2, 1);
  if (!((lhs - rhs).num < 0))
    throw InputError("config: 2(k0+1)eta0 < c*delta0/2 fails; k0 too large");

  cfg.epsilon0 = ov.epsilon0 > 0 ? ov.epsilon0 : 1e-3;
  cfg.scale = ov.scale;
  cfg.R = std::pow(static_cast<double>(X), cfg.sigma0 * cfg.scale);
  cfg.H = std::pow(static_cast<double>(X), 2.0 * cfg.sigma0);

  if (ov.w0 >= 0) {
    cfg.w0 = ov.w0;
  } else {
    double lll = std::log(std::log(std::log(static_cast<double>(X))));
    cfg.w0 = lll > 0 ? static_cast<int>(std::floor(lll)) : 0;
  }
  cfg.W = primorial_upto(cfg.w0);

  if (ov.max_precision_bits > 0) cfg.max_precision_bits = ov.max_precision_bits;
  if (ov.segment_size > 0) cfg.segment_size = ov.segment_size;
  if (ov.threads > 0) cfg.threads = ov.threads;
  cfg.b_residue = ov.b_residue;
  return cfg;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  static const std::set<std::string> known = {
      "c",  "k0",    "m",     "X",       "w0",
      "epsilon0",    "scale", "threads", "max_precision_bits",
      "segment_size", "b_residue"};
  std::ifstream in(path);
  if (!in) throw InputError("config file not readable: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto notspace = [](unsigned char ch) { return !std::isspace(ch); };
    line.erase(line.begin(), std::find_if(line.begin(), line.end(), notspace));
    line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(), line.end());
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("config file: missing '=' at line " + std::to_string(lineno));
    auto trim = [&notspace](std::string s) {
      s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
      s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
      return s;
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (!known.count(key))
      throw InputError("config file: unknown key '" + key + "'");
    kv[key] = val;
  }
  return kv;
}

}  // namespace psgap
