// psgap: floor-power sequences, sieve weights and prime-cluster scans
// around N^c = {[n^c]}.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "psgap/cluster.hpp"
#include "psgap/errors.hpp"
#include "psgap/expsums.hpp"
#include "psgap/maynard.hpp"
#include "psgap/params.hpp"
#include "psgap/powerfloor.hpp"
#include "psgap/primes.hpp"
#include "psgap/psprimes.hpp"
#include "psgap/smoothing.hpp"
#include "psgap/variational.hpp"

using json = nlohmann::json;
using namespace psgap;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Common {
  std::string c_str = "11/10";
  int k0 = 5;
  int m = 1;
  std::uint64_t X = 1000000;
  int w0 = -1;
  double epsilon0 = -1;
  double scale = 1.0;
  int threads = 1;
  int max_precision_bits = -1;
  std::string range;
  int degree = 3;
  std::string out;
  std::string format = "csv";

  Exponent exponent() const { return parse_exponent(c_str); }
  SieveConfig config(bool membership_only = false) const {
    ConfigOverrides ov;
    ov.w0 = w0;
    ov.epsilon0 = epsilon0;
    ov.scale = scale;
    ov.threads = threads;
    ov.max_precision_bits = max_precision_bits;
    return derive_config(exponent(), k0, m, X, ov, membership_only);
  }
  std::pair<std::uint64_t, std::uint64_t> parse_range(
      std::uint64_t def_lo, std::uint64_t def_hi) const {
    if (range.empty()) return {def_lo, def_hi};
    auto colon = range.find(':');
    if (colon == std::string::npos)
      throw InputError("--range expects LO:HI");
    return {std::strtoull(range.substr(0, colon).c_str(), nullptr, 10),
            std::strtoull(range.substr(colon + 1).c_str(), nullptr, 10)};
  }
};

void apply_config_file(Common& c) {
  const char* path = std::getenv("PSGAP_CONFIG");
  if (!path || !*path) return;
  auto kv = parse_config_file(path);
  auto get = [&](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  if (auto v = get("c")) c.c_str = *v;
  if (auto v = get("k0")) c.k0 = std::stoi(*v);
  if (auto v = get("m")) c.m = std::stoi(*v);
  if (auto v = get("X")) c.X = std::strtoull(v->c_str(), nullptr, 10);
  if (auto v = get("w0")) c.w0 = std::stoi(*v);
  if (auto v = get("epsilon0")) c.epsilon0 = std::stod(*v);
  if (auto v = get("scale")) c.scale = std::stod(*v);
  if (auto v = get("threads")) c.threads = std::stoi(*v);
  if (auto v = get("max_precision_bits"))
    c.max_precision_bits = std::stoi(*v);
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--c", c.c_str, "exponent c as p/q");
  sub->add_option("--k0", c.k0, "window length parameter");
  sub->add_option("--m", c.m, "target prime count minus one");
  sub->add_option("--X", c.X, "scale parameter");
  sub->add_option("--w0", c.w0, "prime cutoff for W (-1: logloglog X rule)");
  sub->add_option("--epsilon0", c.epsilon0, "Fourier bookkeeping epsilon");
  sub->add_option("--scale", c.scale, "R = X^(sigma0*scale)");
  sub->add_option("--threads", c.threads, "worker threads");
  sub->add_option("--max-precision-bits", c.max_precision_bits,
                  "certified-enclosure precision cap");
  sub->add_option("--range", c.range, "range LO:HI");
  sub->add_option("--degree", c.degree, "polynomial basis degree");
  sub->add_option("--out", c.out, "output path (default stdout)");
  sub->add_option("--format", c.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
}

struct OutputSink {
  std::string path;
  std::ostringstream buffer;
  std::chrono::steady_clock::time_point t0 =
      std::chrono::steady_clock::now();
  std::string command;
  json config_snapshot;

  void finish() {
    if (path.empty()) {
      std::cout << buffer.str();
      return;
    }
    {
      std::ofstream f(path, std::ios::binary);
      if (!f) throw InputError("cannot write output file: " + path);
      f << buffer.str();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    json manifest;
    manifest["command"] = command;
    manifest["version"] = kVersion;
    manifest["config"] = config_snapshot;
    manifest["wall_time_ms"] = ms;
    manifest["outputs"] = {path};
    std::ofstream mf(path + ".manifest.json", std::ios::binary);
    mf << manifest.dump(2) << "\n";
  }
};

json snapshot(const Common& c) {
  json j;
  j["c"] = c.c_str;
  j["k0"] = c.k0;
  j["m"] = c.m;
  j["X"] = c.X;
  j["w0"] = c.w0;
  j["scale"] = c.scale;
  j["threads"] = c.threads;
  j["degree"] = c.degree;
  j["format"] = c.format;
  return j;
}

// the fixed polynomial family used by sieve-check: (1-t)^2 for k0 = 0 and a
// rational (1-P1)^a P2^b combination for k0 = 1
SimplexPoly check_poly(int k0) {
  if (k0 == 0) {
    DensePoly p(1);
    p.add_term({0}, 1);
    p.add_term({1}, -2);
    p.add_term({2}, 1);
    return SimplexPoly{p};
  }
  if (k0 == 1) {
    DensePoly one = DensePoly::constant(2, 1);
    DensePoly P1 = DensePoly::variable(2, 0) + DensePoly::variable(2, 1);
    DensePoly P2 = DensePoly::variable(2, 0) * DensePoly::variable(2, 0) +
                   DensePoly::variable(2, 1) * DensePoly::variable(2, 1);
    DensePoly u = one - P1;
    DensePoly f = u.pow(3) - u.pow(4).scaled(mpq_class(3, 4)) +
                  u.pow(5).scaled(mpq_class(3, 10)) +
                  (u.pow(2) * P2).scaled(mpq_class(2, 7)) -
                  (u.pow(3) * P2).scaled(mpq_class(9, 10));
    return SimplexPoly{f};
  }
  throw InputError("sieve-check: built-in polynomials cover k0 in {0, 1}");
}

int run(int argc, char** argv) {
  CLI::App app{"floor-power prime toolkit"};
  app.require_subcommand(1);

  Common c;
  apply_config_file(c);

  // per-subcommand extras
  std::uint64_t ps_max = 1000;
  double tau = -1.0;
  int min_primes = 2;
  std::uint64_t witness_start = 2, witness_budget = 100000000ull;
  double sieve_R = 300.0;
  std::uint64_t hb_nmax = 100000;
  int hb_J = 2;
  double exp_j = 1.0, exp_C1 = 0.0, exp_C2 = 0.0;
  std::size_t jmax = 1000;

  auto* ps = app.add_subcommand("ps", "enumerate members of N^c");
  add_common(ps, c);
  ps->add_option("--max", ps_max, "upper limit for members");

  auto* density = app.add_subcommand("density", "prime density in N^c");
  add_common(density, c);

  auto* gaps = app.add_subcommand("gaps", "normalized gaps of primes in N^c");
  add_common(gaps, c);
  gaps->add_option("--tau", tau, "threshold (default 2c)");

  auto* cluster = app.add_subcommand("cluster", "scan prime windows");
  add_common(cluster, c);
  cluster->add_option("--min-primes", min_primes, "minimum primes per window");

  auto* witness = app.add_subcommand("witness", "search a (m+1)-prime window");
  add_common(witness, c);
  witness->add_option("--start", witness_start, "first n to scan");
  witness->add_option("--budget", witness_budget, "work budget");

  auto* mk = app.add_subcommand("mk", "variational ratio optimization");
  add_common(mk, c);

  auto* sieve_check = app.add_subcommand("sieve-check",
                                         "brute-force weight sum vs main term");
  add_common(sieve_check, c);
  sieve_check->add_option("--R", sieve_R, "weight support bound");
  bool prop_sums = false;
  sieve_check->add_flag("--prop", prop_sums,
                        "emit the weighted window/membership sums as JSON");

  auto* smooth = app.add_subcommand("smooth", "bump Fourier coefficients");
  add_common(smooth, c);
  smooth->add_option("--jmax", jmax, "coefficient range");
  std::string bump_name = "chi";
  smooth->add_option("--bump", bump_name, "chi|psi|chi_star|psi_star")
      ->check(CLI::IsMember({"chi", "psi", "chi_star", "psi_star"}));

  auto* expsum = app.add_subcommand("expsum", "Lambda-weighted phase sum");
  add_common(expsum, c);
  expsum->add_option("--j", exp_j, "gamma-phase coefficient");
  expsum->add_option("--C1", exp_C1, "linear coefficient");
  expsum->add_option("--C2", exp_C2, "x^(1-gamma) coefficient");

  auto* hb = app.add_subcommand("hb-check", "von Mangoldt decomposition check");
  add_common(hb, c);
  hb->add_option("--n-max", hb_nmax, "check range");
  hb->add_option("--J", hb_J, "decomposition depth");

  auto* vdc = app.add_subcommand("vdc", "second-derivative-test envelope");
  add_common(vdc, c);

  auto* verify = app.add_subcommand("verify-identities",
                                    "shift-map floor identity verification");
  add_common(verify, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage message
    return 2;
  }

  OutputSink sink;
  sink.path = c.out;
  sink.config_snapshot = snapshot(c);
  {
    std::ostringstream cmd;
    for (int i = 0; i < argc; ++i) cmd << (i ? " " : "") << argv[i];
    sink.command = cmd.str();
  }
  std::ostringstream& os = sink.buffer;

  if (*ps) {
    Exponent ce = c.exponent();
    os << "n,m\n";
    enumerate_ps(1, ps_max, ce, [&](const PSElement& e) {
      os << e.n << "," << e.m << "\n";
    });
  } else if (*density) {
    Exponent ce = c.exponent();
    DensityReport rep = density_report(c.X, ce, c.threads);
    os << "x,c_num,c_den,count,main_term,ratio\n";
    os << rep.x << "," << ce.p << "," << ce.q << "," << rep.count << ","
       << fmt17(rep.main_term) << "," << fmt17(rep.ratio) << "\n";
  } else if (*gaps) {
    Exponent ce = c.exponent();
    GapStats st = gap_stats(ce, c.X, tau, c.threads);
    if (c.format == "json") {
      json j;
      j["x_max"] = c.X;
      j["tau"] = st.tau;
      j["pairs"] = st.records.size();
      j["below_tau"] = st.below_tau;
      j["lower_bound_violations"] = st.lower_bound_violations;
      os << j.dump(2) << "\n";
    } else {
      os << "p,p_next,normalized_gap\n";
      for (const auto& r : st.records)
        os << r.p << "," << r.p_next << "," << fmt17(r.normalized_gap)
           << "\n";
    }
  } else if (*cluster) {
    Exponent ce = c.exponent();
    auto [lo, hi] = c.parse_range(c.X, 2 * c.X);
    os << "n,c_num,c_den,k0,prime_count,offsets,min_value,normalized_span,"
          "in_progression\n";
    scan_clusters(ce, c.k0, lo, hi, min_primes,
                  [&](const ClusterRecord& r) {
                    os << r.n << "," << ce.p << "," << ce.q << "," << r.k0
                       << "," << r.values.size() << ",";
                    for (std::size_t i = 0; i < r.prime_offsets.size(); ++i)
                      os << (i ? ";" : "") << r.prime_offsets[i];
                    os << "," << r.values.front() << ","
                       << fmt17(r.normalized_span) << ","
                       << (r.in_progression ? 1 : 0) << "\n";
                  },
                  c.threads);
  } else if (*witness) {
    SieveConfig cfg = c.config();
    WitnessResult res = witness_search(cfg, c.m, witness_start,
                                        witness_budget);
    json j;
    j["found"] = res.found;
    j["scanned_to"] = res.scanned_to;
    if (res.found) {
      j["n"] = res.record.n;
      j["primes"] = res.record.values;
      j["offsets"] = res.record.prime_offsets;
      j["in_progression"] = res.record.in_progression;
      j["normalized_span"] = res.record.normalized_span;
      j["shift_checked"] = res.shift_checked;
      j["shift_mismatches"] = res.shift_mismatches;
    }
    os << j.dump(2) << "\n";
  } else if (*mk) {
    RatioSolution sol = solve_ratio(c.k0 + 1, c.degree);
    double bound = mk_bound(c.k0);
    json j;
    j["k0"] = c.k0;
    j["degree"] = c.degree;
    j["ratio"] = sol.ratio;
    j["bound"] = bound;
    j["pass"] = sol.ratio >= bound;
    j["residual"] = sol.residual;
    j["basis_size"] = sol.basis.size();
    os << j.dump(2) << "\n";
  } else if (*sieve_check) {
    if (prop_sums) {
      SieveConfig cfg = c.config();
      RatioSolution sol = solve_ratio(c.k0 + 1, c.degree);
      SimplexPoly f = export_f(sol);
      WeightGenerator gen(f, sieve_R, c.k0, cfg.W);
      json j;
      j["R"] = sieve_R;
      j["W"] = cfg.W;
      j["k0"] = c.k0;
      j["X"] = c.X;
      json per_h = json::array();
      for (int h = 0; h <= c.k0; ++h) {
        PropSum s = weighted_prime_window_sum(cfg, gen, h);
        per_h.push_back({{"h", h},
                         {"value", s.value},
                         {"main_term", s.main_term},
                         {"ratio", s.ratio},
                         {"terms", s.terms}});
      }
      j["prime_window"] = per_h;
      PropSum s1 = weighted_membership_sum(cfg, gen);
      j["membership"] = {{"value", s1.value},
                         {"bound", s1.main_term},
                         {"ratio", s1.ratio}};
      CombinedSum comb = combined_positivity_sum(cfg, gen, c.m);
      j["combined"] = {{"value", comb.value}, {"positive", comb.positive}};
      os << j.dump(2) << "\n";
    } else {
      std::uint64_t W = c.w0 >= 0 ? primorial_upto(c.w0) : 2;
      WeightGenerator gen(check_poly(c.k0), sieve_R, c.k0, W);
      LemmaCheck res = sieve_sum_bruteforce(gen);
      os << "R,W,k0,lhs,rhs,ratio\n";
      os << fmt17(sieve_R) << "," << W << "," << c.k0 << "," << fmt17(res.lhs)
         << "," << fmt17(res.rhs) << "," << fmt17(res.ratio) << "\n";
    }
  } else if (*smooth) {
    SieveConfig cfg = c.config();
    WindowBumps pb = window_bumps(cfg);
    const BumpFunction* b = &pb.chi;
    if (bump_name == "psi") b = &pb.psi;
    if (bump_name == "chi_star") b = &pb.chi_star;
    if (bump_name == "psi_star") b = &pb.psi_star;
    FourierReport rep = bump_fourier(*b, jmax);
    os << "j,re,im,bound,ratio\n";
    for (std::size_t j = 0; j <= jmax; ++j) {
      double bound =
          j == 0 ? b->a0()
                 : std::min({1.0 / j, b->a0(),
                             std::pow(b->delta(), -b->spec().r) *
                                 std::pow(static_cast<double>(j),
                                          -(b->spec().r + 1.0))});
      double mag = std::abs(rep.coeffs[j]);
      os << j << "," << fmt17(rep.coeffs[j].real()) << ","
         << fmt17(rep.coeffs[j].imag()) << "," << fmt17(bound) << ","
         << fmt17(bound > 0 ? mag / bound : 0.0) << "\n";
    }
  } else if (*expsum) {
    PhaseFamily ph;
    ph.c = c.exponent();
    ph.j = exp_j;
    ph.C1 = exp_C1;
    ph.C2 = exp_C2;
    ExpSumResult r = lambda_exp_sum(c.X, ph, c.threads);
    os << "phase_j,C1,C2,X,value_re,value_im,trivial,ratio\n";
    os << fmt17(exp_j) << "," << fmt17(exp_C1) << "," << fmt17(exp_C2) << ","
       << c.X << "," << fmt17(r.value.real()) << "," << fmt17(r.value.imag())
       << "," << fmt17(r.trivial) << "," << fmt17(r.ratio) << "\n";
  } else if (*hb) {
    double dev = heath_brown_check(hb_nmax, hb_J);
    json j;
    j["n_max"] = hb_nmax;
    j["J"] = hb_J;
    j["max_deviation"] = dev;
    j["pass"] = dev <= 1e-9;
    os << j.dump(2) << "\n";
  } else if (*vdc) {
    const double N = 10000.0;
    auto f = [N](double x) { return x * x / (2.0 * N); };
    auto fdd = [N](double) { return 1.0 / N; };
    VdcResult r = vdc_check(f, fdd, 0.0, N, 1.0 / N);
    json j;
    j["quadratic"] = {{"K", r.K}, {"pass", r.pass}, {"bound", r.bound}};
    os << j.dump(2) << "\n";
  } else if (*verify) {
    SieveConfig cfg = c.config();
    auto [lo, hi] = c.parse_range(cfg.X, 2 * cfg.X);
    IdentityReport a = verify_shift_identity(cfg, lo, hi);
    CompositionReport b = verify_shift_composition(cfg, lo, hi);
    json j;
    j["range"] = {lo, hi};
    j["shift_identity"] = {{"window_certified", a.window_certified},
                           {"checked", a.checked},
                           {"failures", a.failures},
                           {"unresolved", a.unresolved},
                           {"split_checked", a.split_checked},
                           {"split_failures", a.split_failures},
                           {"split_unresolved", a.split_unresolved},
                           {"member_failures", a.member_failures}};
    j["shift_composition"] = {
        {"members", b.members},
        {"qualifying", b.qualifying},
        {"checked", b.checked},
        {"failures", b.failures},
        {"frac_conclusion_failures", b.frac_conclusion_failures},
        {"unresolved", b.unresolved},
        {"max_frac_deviation", b.max_frac_deviation}};
    bool ok = a.failures == 0 && a.unresolved == 0 && b.failures == 0 &&
              b.unresolved == 0;
    j["pass"] = ok;
    os << j.dump(2) << "\n";
    if (!ok) {
      sink.finish();
      return 1;
    }
  }

  sink.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 1;
  } catch (const PrecisionError& e) {
    std::cerr << "precision unresolved: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "invalid input (budget): " << e.what() << "\n";
    return 2;
  } catch (const CLI::ParseError&) {
    // CLI11_PARSE already reported within run()
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
