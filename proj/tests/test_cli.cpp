#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qqw/cli.hpp"
#include "qqw/report.hpp"

using namespace qqw;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/qqw_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("dyadic epsilon literals") {
  CHECK(parse_eps("2^-6") == doctest::Approx(1.0 / 64.0));
  CHECK(parse_eps("2^-1") == 0.5);
  CHECK(parse_eps("0.125") == 0.125);
  CHECK_THROWS(parse_eps("2^-x"));
  CHECK_THROWS(parse_eps("abc"));
}

TEST_CASE("search-tradeoff emits one record per grid point") {
  TempFile out("tradeoff.csv");
  const int rc = cli_run({"search-tradeoff", "--N", "1024", "--t", "1", "--eps", "2^-4",
                          "--trials", "200", "--seed", "7", "--out", out.path});
  CHECK(rc == 0);
  const std::string csv = slurp(out.path);
  CHECK(csv.rfind("N,t,q,eps_target,eps_measured,eps_analytic,T_mean,T_max,trials,seed\n", 0) ==
        0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);  // header + one record
}

TEST_CASE("identical argv and seed produce byte-identical output files") {
  TempFile a("det_a.csv"), b("det_b.csv");
  const std::vector<std::string> args = {"search-tradeoff", "--N",     "1024", "--t",
                                         "8",               "--eps",   "2^-3", "--trials",
                                         "150",             "--seed",  "99",   "--out"};
  auto run = [&](const std::string& path) {
    std::vector<std::string> full = args;
    full.push_back(path);
    return cli_run(full);
  };
  CHECK(run(a.path) == 0);
  CHECK(run(b.path) == 0);
  const std::string ca = slurp(a.path), cb = slurp(b.path);
  CHECK_FALSE(ca.empty());
  CHECK(ca == cb);
}

TEST_CASE("json format mirrors the csv columns with a schema version") {
  TempFile out("tradeoff.json");
  const int rc = cli_run({"search-tradeoff", "--N", "1024", "--t", "4", "--eps", "0.25",
                          "--trials", "50", "--seed", "3", "--format", "json", "--out",
                          out.path});
  CHECK(rc == 0);
  const std::string json = slurp(out.path);
  CHECK(json.find("\"schema_version\":1") != std::string::npos);
  CHECK(json.find("\"eps_target\":0.25") != std::string::npos);
  CHECK(json.find("\"T_mean\":") != std::string::npos);
}

TEST_CASE("majority exhaustive check stays under the comparison bound") {
  TempFile out("maj.csv");
  const int rc =
      cli_run({"majority", "--N", "12", "--exhaustive", "--check", "--out", out.path});
  CHECK(rc == 0);
}

TEST_CASE("polybounds grid check exits zero when the inequality holds") {
  const int rc = cli_run({"polybounds", "--paturi-grid", "--check", "--out", "/dev/null"});
  CHECK(rc == 0);
}

TEST_CASE("unknown flags exit with the usage code") {
  CHECK(cli_run({"majority", "--no-such-flag"}) == 2);
  CHECK(cli_run({"definitely-not-a-subcommand"}) == 2);
  CHECK(cli_run({}) == 2);
}

TEST_CASE("oracle subcommand reads the documented file format") {
  TempFile tt("or2.tt");
  {
    std::ofstream f(tt.path);
    f << "2\n0111\n";  // OR on two variables, lexicographic input order
  }
  TempFile out("oracle.csv");
  const int rc = cli_run({"oracle", "--file", tt.path, "--out", out.path});
  CHECK(rc == 0);
  const std::string csv = slurp(out.path);
  CHECK(csv.find("2,2,2,2,1,1,1") != std::string::npos);  // N, deg, sens, depth, flags
}

TEST_CASE("andor check passes on a small shape") {
  const int rc = cli_run({"andor", "--shape", "and-of-ors", "--N", "64", "--class",
                          "planted-one", "--trials", "150", "--seed", "5", "--check", "--out",
                          "/dev/null"});
  CHECK(rc == 0);
}

TEST_CASE("QQW_SEED is the fallback when --seed is absent") {
  TempFile a("env_a.csv"), b("env_b.csv"), c("env_c.csv");
  setenv("QQW_SEED", "1234", 1);
  CHECK(cli_run({"search-tradeoff", "--N", "256", "--t", "4", "--eps", "0.25", "--trials",
                 "80", "--out", a.path}) == 0);
  CHECK(cli_run({"search-tradeoff", "--N", "256", "--t", "4", "--eps", "0.25", "--trials",
                 "80", "--seed", "1234", "--out", b.path}) == 0);
  unsetenv("QQW_SEED");
  CHECK(slurp(a.path) == slurp(b.path));
  // an explicit --seed wins over the environment
  setenv("QQW_SEED", "9", 1);
  CHECK(cli_run({"search-tradeoff", "--N", "256", "--t", "4", "--eps", "0.25", "--trials",
                 "80", "--seed", "1234", "--out", c.path}) == 0);
  unsetenv("QQW_SEED");
  CHECK(slurp(b.path) == slurp(c.path));
}

TEST_CASE("comm transcripts replay under a fixed seed") {
  TempFile t1("tr1.txt"), t2("tr2.txt");
  const std::vector<std::string> base = {"comm",     "--N",   "64",       "--mode",
                                         "cert",     "--trials", "5",     "--seed",
                                         "77",       "--out",  "/dev/null", "--transcript"};
  auto run = [&](const std::string& path) {
    std::vector<std::string> full = base;
    full.push_back(path);
    return cli_run(full);
  };
  CHECK(run(t1.path) == 0);
  CHECK(run(t2.path) == 0);
  const std::string ta = slurp(t1.path);
  CHECK_FALSE(ta.empty());
  CHECK(ta == slurp(t2.path));
}

TEST_CASE("star and comm smoke runs under check mode") {
  CHECK(cli_run({"star", "--n", "8", "--class", "star", "--trials", "100", "--seed", "2",
                 "--check", "--out", "/dev/null"}) == 0);
  CHECK(cli_run({"comm", "--N", "64", "--mode", "disjointness", "--class", "disjoint",
                 "--trials", "60", "--seed", "4", "--check", "--out", "/dev/null"}) == 0);
}
