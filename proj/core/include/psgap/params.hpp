#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace psgap {

/// Small exact fraction used for window constants (delta0, eta0, ...).
struct Frac {
  long long num = 0;
  long long den = 1;

  constexpr Frac() = default;
  Frac(long long n, long long d);  // reduces, normalizes sign
  static Frac from_double(double x);

  Frac operator+(const Frac& o) const;
  Frac operator-(const Frac& o) const;
  Frac operator*(const Frac& o) const;
  Frac operator/(const Frac& o) const;
  bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
  bool is_zero() const { return num == 0; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Rational exponent c = p/q in lowest terms, gamma = q/p.
struct Exponent {
  std::uint64_t p = 1;
  std::uint64_t q = 1;
  bool theorem_mode = false;  // 1 < c < 9/8

  double c() const { return static_cast<double>(p) / static_cast<double>(q); }
  double gamma() const { return static_cast<double>(q) / static_cast<double>(p); }
  std::string str() const;
};

/// Reduce p/q and classify. Any p > q >= 1 is accepted for membership/floor
/// arithmetic; theorem_mode is set only for 1 < c < 9/8.
Exponent validate_exponent(std::uint64_t p, std::uint64_t q);

/// Parse "p/q" (or a bare integer, rejected as c<=1 unless > 1 ... "11/10").
Exponent parse_exponent(const std::string& s);

struct ConfigOverrides {
  int w0 = -1;                  // prime cutoff for W; -1 = floor(logloglog X)
  double epsilon0 = -1.0;       // -1 = default 1e-3
  double scale = 1.0;           // R = X^(sigma0 * scale) when != 1
  int max_precision_bits = -1;  // -1 = default 8192
  std::uint64_t segment_size = 0;  // 0 = default 1<<22
  int threads = 1;
  long long b_residue = 1;      // target residue class mod W
};

/// Every derived parameter of a run. All derivations are deterministic.
struct SieveConfig {
  Exponent c;
  int k0 = 1;
  int m = 1;
  std::uint64_t X = 1000;

  double sigma0 = 0;    // min(c-1, 9-8c)/200
  Frac sigma0_frac;     // exact form
  Frac delta0;          // c/9
  Frac eta0;            // c*delta0/(16*k0)
  double epsilon0 = 1e-3;
  double R = 1;         // X^(sigma0*scale)
  double H = 1;         // X^(2*sigma0)
  int w0 = 0;
  std::uint64_t W = 1;  // product of primes <= w0
  double scale = 1.0;
  int max_precision_bits = 8192;
  std::uint64_t segment_size = std::uint64_t(1) << 22;
  int threads = 1;
  long long b_residue = 1;

  double gamma() const { return c.gamma(); }
};

/// Derive every numeric parameter from (c, k0, m, X), then apply overrides.
/// Throws InputError when c is outside theorem range (unless membership_only)
/// or when the window inequality 2(k0+1)eta0 < c*delta0/2 fails.
SieveConfig derive_config(const Exponent& c, int k0, int m, std::uint64_t X,
                          const ConfigOverrides& ov = {},
                          bool membership_only = false);

/// Flat key=value config file ("c=11/10", "k0=5", ...). Unknown keys rejected.
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// Euler phi of a small integer.
std::uint64_t euler_phi(std::uint64_t n);

/// Product of primes <= w0.
std::uint64_t primorial_upto(int w0);

}  // namespace psgap
