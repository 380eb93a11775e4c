#include "psgap/variational.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <tuple>

#include "psgap/errors.hpp"

namespace psgap {

namespace {

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

// Inner integral of P1^a P2^b over the first variable, as a polynomial in
// S = P1', Q = P2' (power sums of the remaining variables) and (1-S):
//   G_{a,b} = sum_{u<=a, v<=b} C(a,u) C(b,v) S^(a-u) Q^(b-v)
//             (1-S)^(u+2v+1) / (u+2v+1)
using GPoly = std::map<std::tuple<unsigned, unsigned, unsigned>, mpq_class>;

GPoly inner_integral(unsigned a, unsigned b) {
  GPoly g;
  for (unsigned u = 0; u <= a; ++u) {
    for (unsigned v = 0; v <= b; ++v) {
      mpq_class c = mpq_class(binomial(a, u) * binomial(b, v)) /
                    mpq_class(static_cast<long>(u + 2 * v + 1));
      g[{a - u, b - v, u + 2 * v + 1}] += c;
    }
  }
  return g;
}

// expand a product of two GPolys into powers (S^A Q^B) with (1-S)^m opened
std::map<std::pair<unsigned, unsigned>, mpq_class> expand_product(
    const GPoly& g1, const GPoly& g2) {
  std::map<std::pair<unsigned, unsigned>, mpq_class> out;
  for (const auto& [t1, c1] : g1) {
    for (const auto& [t2, c2] : g2) {
      unsigned A = std::get<0>(t1) + std::get<0>(t2);
      unsigned B = std::get<1>(t1) + std::get<1>(t2);
      unsigned m = std::get<2>(t1) + std::get<2>(t2);
      mpq_class c = c1 * c2;
      for (unsigned t = 0; t <= m; ++t) {
        mpq_class w = c * mpq_class(binomial(m, t));
        if (t & 1) w = -w;
        out[{A + t, B}] += w;
      }
    }
  }
  return out;
}

struct MomentCache {
  int k;
  std::map<std::pair<unsigned, unsigned>, mpq_class> cache;
  const mpq_class& get(unsigned A, unsigned B) {
    auto it = cache.find({A, B});
    if (it == cache.end()) {
      MonomialSym s = MonomialSym::power_product(k, A, B);
      it = cache.emplace(std::make_pair(A, B), s.integrate_simplex()).first;
    }
    return it->second;
  }
};

double log_mpq(const mpq_class& q) {
  signed long e1, e2;
  double m1 = mpz_get_d_2exp(&e1, q.get_num().get_mpz_t());
  double m2 = mpz_get_d_2exp(&e2, q.get_den().get_mpz_t());
  return std::log(std::abs(m1)) - std::log(std::abs(m2)) +
         (e1 - e2) * std::log(2.0);
}

// signed sqrt of an exact ratio x/(d_i d_j) evaluated stably in doubles
double normalized_entry(const mpq_class& x, const mpq_class& di,
                        const mpq_class& dj) {
  if (x == 0) return 0.0;
  double lg = log_mpq(x * x) - log_mpq(di * dj);
  double mag = std::exp(0.5 * lg);
  return sgn(x) < 0 ? -mag : mag;
}

}  // namespace

Forms build_forms(int k, int degree) {
  if (k < 1) throw InputError("build_forms: k must be >= 1");
  if (degree < 0) throw InputError("build_forms: degree must be >= 0");
  std::vector<BasisElement> cand;
  for (unsigned d = 0; d <= static_cast<unsigned>(degree); ++d)
    for (unsigned b = 0; 2 * b <= d; ++b)
      cand.push_back({d - 2 * b, b});
  if (cand.size() > 1000) throw BudgetError("build_forms: basis too large");

  const std::size_t nc = cand.size();
  // exact I over the candidate basis
  std::vector<std::vector<mpq_class>> Ic(nc, std::vector<mpq_class>(nc));
  for (std::size_t i = 0; i < nc; ++i) {
    for (std::size_t j = i; j < nc; ++j) {
      MonomialSym s = MonomialSym::power_product(k, cand[i].a + cand[j].a,
                                                 cand[i].b + cand[j].b);
      Ic[i][j] = Ic[j][i] = s.integrate_simplex();
    }
  }
  // prune linear dependence by exact Gram-Schmidt in coefficient space
  std::vector<std::size_t> keep;
  std::vector<std::vector<mpq_class>> ortho;  // vectors over candidate basis
  std::vector<mpq_class> norms;
  auto inner = [&](const std::vector<mpq_class>& x,
                   const std::vector<mpq_class>& y) {
    mpq_class acc = 0;
    for (std::size_t i = 0; i < nc; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < nc; ++j) {
        if (y[j] == 0) continue;
        acc += x[i] * y[j] * Ic[i][j];
      }
    }
    return acc;
  };
  for (std::size_t i = 0; i < nc; ++i) {
    std::vector<mpq_class> u(nc, mpq_class(0));
    u[i] = 1;
    for (std::size_t t = 0; t < ortho.size(); ++t) {
      mpq_class proj = inner(u, ortho[t]) / norms[t];
      if (proj == 0) continue;
      for (std::size_t j = 0; j < nc; ++j) u[j] -= proj * ortho[t][j];
    }
    mpq_class nn = inner(u, u);
    if (nn == 0) continue;  // dependent (e.g. P2 = P1^2 when k = 1)
    keep.push_back(i);
    ortho.push_back(std::move(u));
    norms.push_back(nn);
  }

  Forms f;
  f.k = k;
  f.degree = degree;
  const std::size_t nb = keep.size();
  f.basis.reserve(nb);
  for (auto i : keep) f.basis.push_back(cand[i]);
  f.I.assign(nb, std::vector<mpq_class>(nb));
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) f.I[i][j] = Ic[keep[i]][keep[j]];

  f.J.assign(nb, std::vector<mpq_class>(nb));
  MomentCache mc{k - 1, {}};
  std::vector<GPoly> G(nb);
  for (std::size_t i = 0; i < nb; ++i)
    G[i] = inner_integral(f.basis[i].a, f.basis[i].b);
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = i; j < nb; ++j) {
      auto prod = expand_product(G[i], G[j]);
      mpq_class acc = 0;
      for (const auto& [ab, c] : prod) acc += c * mc.get(ab.first, ab.second);
      f.J[i][j] = f.J[j][i] = acc;
    }
  }
  return f;
}

double rayleigh_quotient(const Forms& f, const std::vector<double>& v) {
  const std::size_t nb = f.basis.size();
  if (v.size() != nb) throw InputError("rayleigh_quotient: size mismatch");
  // evaluate in normalized coordinates to avoid underflow at large k
  long double num = 0, den = 0;
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      double Jn = normalized_entry(f.J[i][j], f.I[i][i], f.I[j][j]);
      double In = normalized_entry(f.I[i][j], f.I[i][i], f.I[j][j]);
      double si = v[i] * std::exp(0.5 * log_mpq(f.I[i][i]));
      double sj = v[j] * std::exp(0.5 * log_mpq(f.I[j][j]));
      num += Jn * si * sj;
      den += In * si * sj;
    }
  }
  return f.k * static_cast<double>(num / den);
}

RatioSolution solve_ratio(int k, int degree) {
  Forms f = build_forms(k, degree);
  const std::size_t nb = f.basis.size();
  Eigen::MatrixXd In(nb, nb), Jn(nb, nb);
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      In(i, j) = normalized_entry(f.I[i][j], f.I[i][i], f.I[j][j]);
      Jn(i, j) = normalized_entry(f.J[i][j], f.I[i][i], f.I[j][j]);
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Jn, In);
  if (es.info() != Eigen::Success)
    throw InvariantError("solve_ratio: eigensolver failed to converge");
  const std::size_t last = nb - 1;
  double lambda = es.eigenvalues()(last);
  Eigen::VectorXd v = es.eigenvectors().col(last);
  double residual = (Jn * v - lambda * In * v).norm() / v.norm();

  RatioSolution sol;
  sol.k = k;
  sol.degree = degree;
  sol.basis = f.basis;
  sol.ratio = k * lambda;
  sol.residual = residual;
  sol.coeffs.resize(nb);
  for (std::size_t i = 0; i < nb; ++i)
    sol.coeffs[i] = v(i) * std::exp(-0.5 * log_mpq(f.I[i][i]));
  return sol;
}

DensePoly basis_to_dense(int k, const std::vector<BasisElement>& basis,
                         const std::vector<double>& coeffs) {
  if (basis.size() != coeffs.size())
    throw InputError("basis_to_dense: size mismatch");
  DensePoly P1(k), P2(k);
  for (int i = 0; i < k; ++i) {
    P1 = P1 + DensePoly::variable(k, i);
    P2 = P2 + DensePoly::variable(k, i) * DensePoly::variable(k, i);
  }
  DensePoly F(k);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (coeffs[i] == 0.0) continue;
    mpq_class c(coeffs[i]);
    F = F + (P1.pow(basis[i].a) * P2.pow(basis[i].b)).scaled(c);
  }
  return F;
}

SimplexPoly export_f(const DensePoly& F) {
  const int k = F.nvars();
  if (k > 8) throw InputError("export_f: limited to k <= 8 variables");
  DensePoly f = F.corner_transform();
  DensePoly back = f.mixed_partial_all();
  DensePoly expect = (k % 2 == 0) ? F : F.scaled(mpq_class(-1));
  if (!(back == expect))
    throw InvariantError("export_f: mixed partial does not recover F");
  return SimplexPoly{f};
}

SimplexPoly export_f(const RatioSolution& sol) {
  return export_f(basis_to_dense(sol.k, sol.basis, sol.coeffs));
}

double mk_bound(int k0) {
  double l = std::log(static_cast<double>(k0));
  return 0.5 * l + 0.5 * std::log(l) - 2.0;
}

}  // namespace psgap
