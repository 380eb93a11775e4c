#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"

namespace {

std::string binary() {
  const char* p = std::getenv("PSGAP_BIN");
  REQUIRE(p != nullptr);
  return p;
}

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = binary() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
    out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::string s((std::istreambuf_iterator<char>(f)),
                std::istreambuf_iterator<char>());
  return s;
}

}  // namespace

TEST_CASE("ps subcommand emits members up to the limit") {
  RunResult r = run("ps --c 11/10 --max 1000");
  CHECK(r.code == 0);
  CHECK(r.out.substr(0, 4) == "n,m\n");
  // 6 is not a member; 2048 out of range
  CHECK(r.out.find(",6\n") == std::string::npos);
  CHECK(r.out.find("5,5\n") != std::string::npos);
  // member count is max{n : n^c < 1001} = 536 (frozen from enumerate oracle)
  int lines = 0;
  for (char ch : r.out) lines += ch == '\n';
  CHECK(lines >= 400);
}

TEST_CASE("unknown flags exit 2") {
  RunResult r = run("ps --bogus 7");
  CHECK(r.code == 2);
  RunResult r2 = run("nosuchcommand");
  CHECK(r2.code == 2);
}

TEST_CASE("invalid exponent exits 2") {
  RunResult r = run("ps --c 10/11 --max 100");
  CHECK(r.code == 2);
}

TEST_CASE("mk reports the ratio with the bound flag") {
  RunResult r = run("mk --k0 10 --degree 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"pass\": true") != std::string::npos);
  CHECK(r.out.find("\"ratio\"") != std::string::npos);
}

TEST_CASE("byte-identical CSV across reruns and thread counts") {
  RunResult a = run("expsum --c 11/10 --X 20000 --j 1 --threads 1");
  RunResult b = run("expsum --c 11/10 --X 20000 --j 1 --threads 8");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  RunResult g1 = run("gaps --c 11/10 --X 50000 --threads 1");
  RunResult g8 = run("gaps --c 11/10 --X 50000 --threads 8");
  CHECK(g1.out == g8.out);
}

TEST_CASE("output file plus manifest, timestamps out of band") {
  const char* path = "cli_density.csv";
  RunResult r = run(std::string("density --c 11/10 --X 10000 --out ") + path);
  CHECK(r.code == 0);
  std::string csv = slurp(path);
  CHECK(csv.find("x,c_num,c_den,count,main_term,ratio") == 0);
  std::string manifest = slurp(std::string(path) + ".manifest.json");
  CHECK(manifest.find("wall_time_ms") != std::string::npos);
  CHECK(manifest.find("density") != std::string::npos);
  // second run: csv bytes identical, manifest may differ in wall time
  RunResult r2 = run(std::string("density --c 11/10 --X 10000 --out ") + path);
  CHECK(r2.code == 0);
  CHECK(slurp(path) == csv);
  std::remove(path);
  std::remove((std::string(path) + ".manifest.json").c_str());
}

TEST_CASE("config file feeds defaults, flags override") {
  const char* cfg = "cli_test_config.tmp";
  {
    std::ofstream f(cfg);
    f << "c=11/10\nX=10000\n";
  }
  std::string cmd = std::string("PSGAP_CONFIG=") + cfg + " " + binary() +
                    " density 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
    out.append(buf.data(), n);
  pclose(pipe);
  CHECK(out.find("10000,11,10,") != std::string::npos);
  std::remove(cfg);
}

TEST_CASE("verify-identities reports zero counterexamples") {
  RunResult r =
      run("verify-identities --c 11/10 --X 100000 --k0 5 --threads 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"pass\": true") != std::string::npos);
  CHECK(r.out.find("\"failures\": 0") != std::string::npos);
}

TEST_CASE("sieve-check CSV shape") {
  RunResult r = run("sieve-check --k0 0 --R 100");
  CHECK(r.code == 0);
  CHECK(r.out.find("R,W,k0,lhs,rhs,ratio") == 0);
}

TEST_CASE("hb-check and vdc run clean") {
  RunResult r = run("hb-check --n-max 5000 --J 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"pass\": true") != std::string::npos);
  RunResult v = run("vdc");
  CHECK(v.code == 0);
  CHECK(v.out.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("witness finds a pair window") {
  RunResult r = run("witness --c 11/10 --k0 10 --m 1 --X 1000");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"found\": true") != std::string::npos);
}

TEST_CASE("smooth emits the coefficient table per bump") {
  RunResult r = run("smooth --c 11/10 --X 1000000 --k0 5 --jmax 16");
  CHECK(r.code == 0);
  CHECK(r.out.find("j,re,im,bound,ratio") == 0);
  RunResult r2 =
      run("smooth --c 11/10 --X 1000000 --k0 5 --jmax 16 --bump psi_star");
  CHECK(r2.code == 0);
  CHECK(r2.out != r.out);
  RunResult bad = run("smooth --bump nope");
  CHECK(bad.code == 2);
}
