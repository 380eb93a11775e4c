#include "psgap/smoothing.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>

#include "psgap/errors.hpp"
#include "psgap/fft.hpp"

namespace psgap {

namespace {

mpq_class to_mpq(const Frac& f) {
  return mpq_class(static_cast<long>(f.num), static_cast<unsigned long>(f.den));
}

// Piecewise polynomial on [brk_0, brk_last], zero outside, exact rational
// coefficients. pieces[i] lives on [brk[i], brk[i+1]).
struct Pieces {
  std::vector<mpq_class> brk;
  std::vector<std::vector<mpq_class>> poly;  // coefficient lists, poly[i][k] x^k

  mpq_class total_integral() const {
    mpq_class tot = 0;
    for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
      const auto& p = poly[i];
      for (std::size_t k = 0; k < p.size(); ++k) {
        mpq_class hi = brk[i + 1], lo = brk[i];
        mpq_class hpow = 1, lpow = 1;
        for (std::size_t t = 0; t <= k; ++t) {
          hpow *= hi;
          lpow *= lo;
        }
        tot += p[k] * (hpow - lpow) / mpq_class(static_cast<long>(k + 1));
      }
    }
    return tot;
  }
};

std::vector<mpq_class> poly_antiderivative(const std::vector<mpq_class>& p) {
  std::vector<mpq_class> out(p.size() + 1);
  out[0] = 0;
  for (std::size_t k = 0; k < p.size(); ++k)
    out[k + 1] = p[k] / mpq_class(static_cast<long>(k + 1));
  return out;
}

mpq_class poly_eval(const std::vector<mpq_class>& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}

// shift a polynomial: q(x) = p(x + s)
std::vector<mpq_class> poly_shift(const std::vector<mpq_class>& p,
                                  const mpq_class& s) {
  std::vector<mpq_class> out(p.size(), mpq_class(0));
  for (std::size_t k = 0; k < p.size(); ++k) {
    std::vector<mpq_class> term = {mpq_class(1)};  // (x+s)^k incrementally
    for (std::size_t t = 0; t < k; ++t) {
      std::vector<mpq_class> nxt(term.size() + 1, mpq_class(0));
      for (std::size_t j = 0; j < term.size(); ++j) {
        nxt[j] += term[j] * s;
        nxt[j + 1] += term[j];
      }
      term.swap(nxt);
    }
    for (std::size_t j = 0; j <= k; ++j) out[j] += p[k] * term[j];
  }
  return out;
}

// evaluate the antiderivative G of f extended by constants outside support
struct Cdf {
  const Pieces& f;
  std::vector<std::vector<mpq_class>> G;  // per piece, with continuity offsets
  mpq_class total;

  explicit Cdf(const Pieces& fp) : f(fp) {
    mpq_class acc = 0;
    G.resize(fp.poly.size());
    for (std::size_t i = 0; i < fp.poly.size(); ++i) {
      G[i] = poly_antiderivative(fp.poly[i]);
      mpq_class at_lo = poly_eval(G[i], fp.brk[i]);
      G[i][0] += acc - at_lo;
      acc = poly_eval(G[i], fp.brk[i + 1]);
    }
    total = acc;
  }

  // symbolic G(x + s) restricted to an interval inside one piece; piece
  // index found for the midpoint of [a+s, b+s]
  std::vector<mpq_class> shifted_poly(const mpq_class& a, const mpq_class& b,
                                      const mpq_class& s) const {
    mpq_class mid = (a + b) / 2 + s;
    if (mid <= f.brk.front()) return {mpq_class(0)};
    if (mid >= f.brk.back()) return {total};
    std::size_t idx = 0;
    while (idx + 2 < f.brk.size() && !(mid < f.brk[idx + 1])) ++idx;
    return poly_shift(G[idx], s);
  }
};

// convolve with a centered box of width w (unit mass)
Pieces box_convolve(const Pieces& f, const mpq_class& w) {
  Cdf G(f);
  mpq_class half = w / 2;
  std::vector<mpq_class> brk;
  for (const auto& b : f.brk) {
    brk.push_back(b - half);
    brk.push_back(b + half);
  }
  std::sort(brk.begin(), brk.end());
  brk.erase(std::unique(brk.begin(), brk.end()), brk.end());
  Pieces out;
  out.brk = brk;
  out.poly.resize(brk.size() - 1);
  for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
    auto hi = G.shifted_poly(brk[i], brk[i + 1], half);
    auto lo = G.shifted_poly(brk[i], brk[i + 1], -half);
    std::vector<mpq_class> diff(std::max(hi.size(), lo.size()), mpq_class(0));
    for (std::size_t k = 0; k < hi.size(); ++k) diff[k] += hi[k];
    for (std::size_t k = 0; k < lo.size(); ++k) diff[k] -= lo[k];
    for (auto& c : diff) c /= w;
    while (diff.size() > 1 && diff.back() == 0) diff.pop_back();
    out.poly[i] = std::move(diff);
  }
  return out;
}

}  // namespace

BumpSpec BumpSpec::plain(double alpha, double beta, double delta, int r) {
  BumpSpec s;
  s.alpha = WindowEdge{Frac::from_double(alpha), Frac()};
  s.beta = WindowEdge{Frac::from_double(beta), Frac()};
  Frac width = Frac::from_double(beta) - Frac::from_double(alpha);
  s.delta_ratio = Frac::from_double(delta) / width;
  s.r = r;
  return s;
}

BumpFunction::BumpFunction(const BumpSpec& spec) : spec_(spec) {
  if (spec.r < 1) throw InputError("bump: r must be at least 1");
  Frac dr = spec.delta_ratio;
  if (!(dr.num > 0) || !((dr - Frac(1, 2)).num < 0))
    throw InputError("bump: 2*Delta < beta - alpha violated");
  alpha_ = edge_value(spec.alpha, spec.c, spec.X);
  beta_ = edge_value(spec.beta, spec.c, spec.X);
  shift_ = spec.shift.u.is_zero() && spec.shift.v.is_zero()
               ? 0.0
               : edge_value(spec.shift, spec.c, spec.X);
  if (!(alpha_ >= 0.0) || !(alpha_ < beta_) || !(beta_ <= 1.0))
    throw InputError("bump: need 0 <= alpha < beta <= 1");
  double width = beta_ - alpha_;
  delta_ = dr.to_double() * width;
  plat_lo_ = alpha_ + delta_;
  plat_hi_ = beta_ - delta_;
  a0_ = width - delta_;
  inv_width_ = 1.0 / width;

  // normalized construction on [0,1]: indicator [d/2, 1-d/2] convolved r
  // times with a box of width d/r, d = delta_ratio
  mpq_class d = to_mpq(dr);
  Pieces cur;
  cur.brk = {d / 2, 1 - d / 2};
  cur.poly = {{mpq_class(1)}};
  mpq_class w = d / static_cast<long>(spec.r);
  for (int i = 0; i < spec.r; ++i) cur = box_convolve(cur, w);
  // support must be exactly [0, 1], plateau exactly 1 on [d, 1-d]
  if (cur.brk.front() != 0 || cur.brk.back() != 1)
    throw InvariantError("bump: convolution support drifted");
  for (std::size_t i = 0; i + 1 < cur.brk.size(); ++i) {
    if (cur.brk[i] >= d && cur.brk[i + 1] <= 1 - d) {
      if (!(cur.poly[i].size() == 1 && cur.poly[i][0] == 1))
        throw InvariantError("bump: plateau is not exactly 1");
    }
  }
  brk_.reserve(cur.brk.size());
  for (const auto& b : cur.brk) brk_.push_back(b.get_d());
  coef_.reserve(cur.poly.size());
  for (const auto& p : cur.poly) {
    std::vector<double> cd(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) cd[k] = p[k].get_d();
    coef_.push_back(std::move(cd));
  }
}

double BumpFunction::operator()(double x) const {
  double u = x - shift_;
  u -= std::floor(u);
  if (u <= alpha_ || u >= beta_) return 0.0;
  if (u >= plat_lo_ && u <= plat_hi_) return 1.0;
  double t = (u - alpha_) * inv_width_;
  std::size_t i =
      std::upper_bound(brk_.begin(), brk_.end(), t) - brk_.begin();
  if (i == 0 || i >= brk_.size()) return 0.0;
  const auto& p = coef_[i - 1];
  double acc = 0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * t + p[k];
  return std::clamp(acc, 0.0, 1.0);
}

FourierReport bump_fourier(const BumpFunction& b, std::size_t Jmax,
                           std::size_t grid) {
  if (Jmax < 1) throw InputError("bump_fourier: Jmax must be >= 1");
  if (grid == 0) {
    grid = 1 << 16;
    while (grid < 64 * Jmax) grid <<= 1;
  }
  if (grid & (grid - 1)) throw InputError("bump_fourier: grid must be 2^k");
  if (grid < 8 * Jmax)
    throw InputError("bump_fourier: grid too small for Jmax (aliasing)");
  std::vector<std::complex<double>> samples(grid);
  for (std::size_t i = 0; i < grid; ++i)
    samples[i] = b(static_cast<double>(i) / static_cast<double>(grid));
  fft_inplace(samples, false);
  FourierReport rep;
  rep.grid = grid;
  rep.a0_expected = b.a0();
  rep.coeffs.resize(Jmax + 1);
  const double invn = 1.0 / static_cast<double>(grid);
  for (std::size_t j = 0; j <= Jmax; ++j) rep.coeffs[j] = samples[j] * invn;
  const double a0 = b.a0();
  const double delta = b.delta();
  const int r = b.spec().r;
  double kr = 0;
  double parseval = std::norm(rep.coeffs[0]);
  for (std::size_t j = 1; j <= Jmax; ++j) {
    double jd = static_cast<double>(j);
    double env = std::min({1.0 / jd, a0,
                           std::pow(delta, -r) * std::pow(jd, -(r + 1.0))});
    kr = std::max(kr, std::abs(rep.coeffs[j]) / env);
    parseval += 2.0 * std::norm(rep.coeffs[j]);
  }
  rep.K_r = kr;
  rep.parseval_sum = parseval;
  return rep;
}

std::complex<double> bump_coeff_closed_form(const BumpFunction& b, long j) {
  // transform of indicator[A,B] * box(w)^r, A = alpha + Delta/2,
  // B = beta - Delta/2, w = Delta/r
  double A = b.alpha() + b.delta() / 2;
  double B = b.beta() - b.delta() / 2;
  int r = b.spec().r;
  double w = b.delta() / r;
  auto sincf = [](double t) {
    return t == 0.0 ? 1.0 : std::sin(M_PI * t) / (M_PI * t);
  };
  if (j == 0) return {B - A, 0.0};
  double jd = static_cast<double>(j);
  double mag = (B - A) * sincf(jd * (B - A)) * std::pow(sincf(jd * w), r);
  double phase = -M_PI * jd * (A + B) - 2.0 * M_PI * jd * b.shift();
  return std::polar(mag, phase);
}

WindowBumps window_bumps(const SieveConfig& cfg, int r_cap) {
  const Frac one(1, 1);
  const Frac d0 = cfg.delta0;
  const Frac e0 = cfg.eta0;
  int r_chi = r_cap;
  if (cfg.epsilon0 > 0)
    r_chi = std::min<double>(r_cap, std::floor(100.0 / cfg.epsilon0));
  int r_psi = r_cap;
  if (cfg.sigma0 > 0)
    r_psi = std::min<double>(r_cap, std::floor(100.0 / cfg.sigma0));

  BumpSpec chi;
  chi.alpha = {one, Frac(-2, 1) * d0};
  chi.beta = {one, Frac(-1, 1) * d0};
  chi.r = r_chi;
  chi.c = cfg.c;
  chi.X = cfg.X;

  BumpSpec psi;
  psi.alpha = {e0, Frac()};
  psi.beta = {Frac(2, 1) * e0, Frac()};
  psi.r = r_psi;

  BumpSpec chi_o;  // base bump with beta = 1; chi_star shifts the argument
  chi_o.alpha = {one, Frac(-4, 1) * d0};
  chi_o.beta = {one, Frac()};
  chi_o.r = r_chi;
  chi_o.c = cfg.c;
  chi_o.X = cfg.X;
  chi_o.shift = {Frac(), d0};

  BumpSpec psi_s;
  psi_s.alpha = {e0 / Frac(2, 1), Frac()};
  psi_s.beta = {Frac(5, 2) * e0, Frac()};
  psi_s.r = r_psi;

  // degenerate-window guard: keep the ramp resolvable on a 2^20 grid
  double chi_width = edge_value(chi.beta, cfg.c, cfg.X) -
                     edge_value(chi.alpha, cfg.c, cfg.X);
  if (chi_width < 0x1p-18)
    throw InputError("window_bumps: window width below grid resolution; X too large");
  if ((Frac(2, 1) * e0 - e0).to_double() < 0x1p-18)
    throw InputError("window_bumps: eta0 window below grid resolution");

  WindowBumps out{BumpFunction(chi), BumpFunction(psi), BumpFunction(chi_o),
                 BumpFunction(psi_s), r_chi, r_psi, r_cap};
  return out;
}

std::complex<double> SawtoothExpansion::truncated(double x) const {
  std::complex<double> acc(0, 0);
  for (int h = -H; h <= H; ++h) {
    double ang = 2.0 * M_PI * h * x;
    acc += std::complex<double>(std::cos(ang), std::sin(ang)) /
           (static_cast<double>(h) + theta);
  }
  return c_theta * acc;
}

std::complex<double> SawtoothExpansion::exact(double x) const {
  double fx = x - std::floor(x);
  double ang = -2.0 * M_PI * theta * fx;
  return {std::cos(ang), std::sin(ang)};
}

double SawtoothExpansion::envelope(double x) const {
  double nx = std::abs(x - std::round(x));
  return 1.0 / (1.0 + H * nx);
}

SawtoothExpansion sawtooth_expand(double theta, int H) {
  if (H < 2) throw InputError("sawtooth_expand: H must be >= 2");
  double nt = std::abs(theta - std::round(theta));
  if (nt == 0.0)
    throw InputError("sawtooth_expand: integral theta is degenerate");
  SawtoothExpansion s;
  s.theta = theta;
  s.H = H;
  s.norm_theta = nt;
  // c(theta) = (1 - e(-theta)) / (2 pi i)
  std::complex<double> num =
      std::complex<double>(1.0, 0.0) -
      std::complex<double>(std::cos(-2.0 * M_PI * theta),
                           std::sin(-2.0 * M_PI * theta));
  s.c_theta = num / std::complex<double>(0.0, 2.0 * M_PI);
  return s;
}

}  // namespace psgap
