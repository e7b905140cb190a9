#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mproots/cli.hpp"

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = mproots::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

int count_lines(const std::string& s) {
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("help is printed on request") {
  auto r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("solve") != std::string::npos);
  CHECK(r.out.find("bench") != std::string::npos);
  CHECK(r.out.find("coc") != std::string::npos);
  CHECK(r.out.find("basin") != std::string::npos);
}

TEST_CASE("solve prints the root and the TNFE") {
  auto r = run_cli({"solve", "--function", "f2", "--guess", "1.5", "--method", "om8"});
  CHECK(r.code == 0);
  CHECK(r.out.find("1.34742809896830498") != std::string::npos);
  CHECK(r.out.find("TNFE: 8") != std::string::npos);
  CHECK(r.out.find("iterations: 2") != std::string::npos);
}

TEST_CASE("solve accepts expressions and traces iterations") {
  auto r = run_cli({"solve", "--function", "x^2-2", "--guess", "1.5", "--method", "newton",
                    "--digits", "120", "--trace"});
  CHECK(r.code == 0);
  CHECK(r.out.find("1.4142135623") != std::string::npos);
  CHECK(r.out.find("n=0") != std::string::npos);
  CHECK(r.out.find("n=1") != std::string::npos);
}

TEST_CASE("any beta passes validation") {
  auto r = run_cli({"solve", "--function", "f2", "--guess", "1.5", "--method", "om8",
                    "--beta", "99", "--tol", "1e-50"});
  CHECK(r.code == 0);
  CHECK(r.out.find("status: converged") != std::string::npos);
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_cli({"solve", "--function", "f2"}).code == 1);          // missing --guess
  CHECK(run_cli({"solve", "--no-such-flag"}).code == 1);
  CHECK(run_cli({}).code == 1);                                     // no subcommand
  auto bad_method = run_cli({"solve", "--function", "f2", "--guess", "1.5", "--method", "om9"});
  CHECK(bad_method.code == 1);
  auto bad_expr = run_cli({"solve", "--function", "10x", "--guess", "1.5"});
  CHECK(bad_expr.code == 1);
  CHECK(bad_expr.err.find("grammar") != std::string::npos);
}

TEST_CASE("bad values exit with code 1") {
  CHECK(run_cli({"solve", "--function", "f2", "--guess", "abc"}).code == 1);
  CHECK(run_cli({"solve", "--function", "f2", "--guess", "1.5", "--digits", "30"}).code == 1);
  CHECK(run_cli({"bench", "--suite", "table9"}).code == 1);
}

TEST_CASE("convergence failure exits with code 2") {
  auto r = run_cli({"solve", "--function", "f2", "--guess", "1.3", "--method", "steffensen",
                    "--max-iters", "3", "--digits", "120"});
  CHECK(r.code == 2);
  CHECK(r.out.find("status: max-iterations") != std::string::npos);
}

TEST_CASE("om8df warns below the order-preserving shift exponent") {
  auto r = run_cli({"solve", "--function", "f2", "--guess", "1.34", "--method", "om8df",
                    "--shift-exponent", "1", "--digits", "200"});
  CHECK(r.err.find("order") != std::string::npos);
}

TEST_CASE("verbose echoes every flag") {
  auto r = run_cli({"--verbose", "solve", "--function", "f2", "--guess", "1.5",
                    "--digits", "120"});
  CHECK(r.code == 0);
  for (const char* key :
       {"function = f2", "guess = 1.5", "method = om8", "alpha = 0", "beta = 3",
        "gamma = 0", "delta = 1", "shift-exponent = 3", "shift-scale = 1", "digits = 120",
        "tol = 1e-50", "max-iters = 100", "trace = false"}) {
    INFO("missing: ", key);
    CHECK(r.err.find(key) != std::string::npos);
  }
}

TEST_CASE("bench table3 emits 28 data rows") {
  auto r = run_cli({"bench", "--suite", "table3", "--methods", "om8", "--format", "csv",
                    "--digits", "200"});
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 29);  // header + 7 functions x 4 guesses
  CHECK(r.out.find("f1,1.5,OM8,tolerance,2,8,converged,200") != std::string::npos);
}

TEST_CASE("bench all runs both protocols into one csv") {
  auto r = run_cli({"bench", "--suite", "all", "--methods", "om8", "--format", "csv",
                    "--digits", "200"});
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 57);  // one header + 28 tnfe12 + 28 tolerance rows
  CHECK(r.out.find("tnfe12") != std::string::npos);
  CHECK(r.out.find("tolerance") != std::string::npos);
  // exactly one header line
  CHECK(r.out.rfind("function,guess,method,") == 0);
}

TEST_CASE("bench writes files and supports markdown") {
  std::string path = "cli_bench_test.md";
  auto r = run_cli({"bench", "--suite", "table3", "--methods", "om8", "--format",
                    "markdown", "--digits", "200", "--out", path});
  CHECK(r.code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str().find("## f1") != std::string::npos);
  in.close();
  std::remove(path.c_str());
}

TEST_CASE("coc subcommand reports the measured order") {
  auto r = run_cli({"coc", "--function", "f2", "--guess", "1.5", "--method", "om8"});
  CHECK(r.code == 0);
  REQUIRE(r.out.find("COC: ") != std::string::npos);
  double value = std::stod(r.out.substr(r.out.find("COC: ") + 5));
  CHECK(value > 7.5);
  CHECK(value < 8.5);
  CHECK(r.out.find("spread:") != std::string::npos);
  CHECK(r.out.find("window:") != std::string::npos);
}

TEST_CASE("coc falls back to increments for ad-hoc expressions") {
  auto r = run_cli({"coc", "--function", "x^2-2", "--guess", "1.5", "--method", "newton",
                    "--digits", "200"});
  CHECK(r.code == 0);
  REQUIRE(r.out.find("COC: ") != std::string::npos);
  double value = std::stod(r.out.substr(r.out.find("COC: ") + 5));
  CHECK(value > 1.7);
  CHECK(value < 2.3);
  CHECK(r.out.find("basis: increments") != std::string::npos);
}

TEST_CASE("basin subcommand writes a ppm") {
  std::string path = "cli_basin_test.ppm";
  auto r = run_cli({"basin", "--polynomial=-1,0,0,1", "--resolution", "24x24",
                    "--method", "om8", "--out", path});
  CHECK(r.code == 0);
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::string header(9, '\0');
  in.read(header.data(), 9);
  CHECK(header == "P6\n24 24\n");
  in.close();
  std::remove(path.c_str());
}

TEST_CASE("config file supplies defaults and flags override") {
  std::string path = "cli_config_test.ini";
  {
    std::ofstream cfg(path);
    cfg << "# benchmark defaults\n[solve]\ndigits = 120\ntol = 1e-40\n";
  }
  auto r = run_cli({"--verbose", "--config", path, "solve", "--function", "f2",
                    "--guess", "1.5"});
  CHECK(r.code == 0);
  CHECK(r.err.find("digits = 120") != std::string::npos);
  CHECK(r.err.find("tol = 1e-40") != std::string::npos);

  auto over = run_cli({"--verbose", "--config", path, "solve", "--function", "f2",
                       "--guess", "1.5", "--digits", "150"});
  CHECK(over.code == 0);
  CHECK(over.err.find("digits = 150") != std::string::npos);

  {
    std::ofstream cfg(path);
    cfg << "[solve]\nno_such_key = 1\n";
  }
  auto bad = run_cli({"--config", path, "solve", "--function", "f2", "--guess", "1.5"});
  CHECK(bad.code == 1);
  std::remove(path.c_str());
}
