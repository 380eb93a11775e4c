#include "psgap/params.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "doctest.h"
#include "psgap/errors.hpp"

using namespace psgap;

TEST_CASE("validate_exponent reduces and classifies") {
  Exponent e = validate_exponent(11, 10);
  CHECK(e.p == 11);
  CHECK(e.q == 10);
  CHECK(e.theorem_mode);

  // boundary 9/8 excluded from theorem range but fine arithmetically
  Exponent b = validate_exponent(9, 8);
  CHECK_FALSE(b.theorem_mode);

  Exponent r = validate_exponent(22, 20);
  CHECK(r.p == 11);
  CHECK(r.q == 10);

  CHECK_THROWS_AS(validate_exponent(10, 10), InputError);
  CHECK_THROWS_AS(validate_exponent(9, 10), InputError);
  CHECK_THROWS_AS(validate_exponent(0, 3), InputError);
}

TEST_CASE("derive_config matches the parameter formulas") {
  Exponent c = validate_exponent(11, 10);
  SieveConfig cfg = derive_config(c, 5, 1, 1000000);
  // sigma0 = min(0.1, 0.2)/200 = 5e-4
  CHECK(cfg.sigma0 == doctest::Approx(5e-4).epsilon(1e-15));
  CHECK(cfg.sigma0_frac.num == 1);
  CHECK(cfg.sigma0_frac.den == 2000);
  // delta0 = c/9 = 11/90
  CHECK(cfg.delta0.num == 11);
  CHECK(cfg.delta0.den == 90);
  // eta0 = c*delta0/(16 k0) = (11/10)(11/90)/80 = 121/72000
  CHECK(cfg.eta0.num == 121);
  CHECK(cfg.eta0.den == 72000);
  CHECK(cfg.R == doctest::Approx(std::pow(1e6, 5e-4)));
  CHECK(cfg.H == doctest::Approx(std::pow(1e6, 1e-3)));
  // floor(logloglog 1e6) = 0 so W = 1
  CHECK(cfg.w0 == 0);
  CHECK(cfg.W == 1);
  CHECK(cfg.epsilon0 == 1e-3);
}

TEST_CASE("derive_config is deterministic and honors overrides") {
  Exponent c = validate_exponent(11, 10);
  ConfigOverrides ov;
  ov.w0 = 3;
  ov.epsilon0 = 1e-2;
  ov.scale = 2.0;
  SieveConfig a = derive_config(c, 5, 1, 100000, ov);
  SieveConfig b = derive_config(c, 5, 1, 100000, ov);
  CHECK(a.W == 6);
  CHECK(a.epsilon0 == 1e-2);
  CHECK(a.R == b.R);
  CHECK(a.sigma0 == b.sigma0);
  CHECK(std::memcmp(&a.sigma0, &b.sigma0, sizeof(double)) == 0);
}

TEST_CASE("sigma0 positive iff theorem range, max at c = 10/9") {
  // monotone up to 10/9, down after
  auto s0 = [](int p, int q) {
    Exponent e = validate_exponent(p, q);
    SieveConfig cfg = derive_config(e, 2, 1, 1000, {}, !e.theorem_mode);
    return cfg.sigma0;
  };
  double peak = s0(10, 9);
  CHECK(peak > s0(21, 20));
  CHECK(peak > s0(11, 10));
  CHECK((peak > s0(9, 8) || s0(9, 8) <= 0));
  // 9/8 gives sigma0 = 0: rejected in theorem mode
  Exponent b = validate_exponent(9, 8);
  CHECK_THROWS_AS(derive_config(b, 2, 1, 1000), InputError);
  SieveConfig edge = derive_config(b, 2, 1, 1000, {}, true);
  CHECK(edge.sigma0 == 0.0);
}

TEST_CASE("config file parsing") {
  const char* path = "psgap_test_config.tmp";
  {
    std::ofstream out(path);
    out << "# comment\n";
    out << "c=11/10\n";
    out << "k0 = 5\n";
    out << "X=1000000\n";
  }
  auto kv = parse_config_file(path);
  CHECK(kv.at("c") == "11/10");
  CHECK(kv.at("k0") == "5");
  CHECK(kv.at("X") == "1000000");
  std::remove(path);

  {
    std::ofstream out(path);
    out << "bogus_key=1\n";
  }
  CHECK_THROWS_AS(parse_config_file(path), InputError);
  std::remove(path);
}

TEST_CASE("Frac arithmetic") {
  Frac a(1, 2), b(1, 3);
  CHECK((a + b).num == 5);
  CHECK((a + b).den == 6);
  CHECK((a * b).num == 1);
  CHECK((a * b).den == 6);
  CHECK((a - b).num == 1);
  CHECK((a / b).num == 3);
  CHECK(Frac(-2, -4).num == 1);
  CHECK(Frac(2, -4).num == -1);
  CHECK(Frac::from_double(0.25).num == 1);
  CHECK(Frac::from_double(0.25).den == 4);
  CHECK(Frac::from_double(0.2).to_double() == 0.2);
}

TEST_CASE("primorial and phi") {
  CHECK(primorial_upto(0) == 1);
  CHECK(primorial_upto(2) == 2);
  CHECK(primorial_upto(3) == 6);
  CHECK(primorial_upto(5) == 30);
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(2) == 1);
  CHECK(euler_phi(30) == 8);
}
