#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "resvar/commands.hpp"
#include "resvar/scenario.hpp"

using namespace resvar;
using namespace resvar::app;

namespace {

struct CliRun {
  int code;
  std::string out;
};

// Runs the installed tool through the shell, capturing stdout and stderr.
CliRun run(const std::string& args) {
  const std::string cmd = std::string(RESVAR_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST(Scenario, ParsesKeyValueText) {
  std::istringstream in("# comment\ndist = weibull(lambda=1,k=2)  # trailing\n\ngrid = 0.1:2:5\nlog_grid = true\njobs = 3\n");
  const Scenario s = parse_scenario(in);
  EXPECT_EQ(s.dist, "weibull(lambda=1,k=2)");
  EXPECT_TRUE(s.log_grid);
  EXPECT_EQ(s.jobs, 3);
  std::istringstream bad("nonsense = 1\n");
  EXPECT_THROW(parse_scenario(bad), SpecParseError);
  std::istringstream no_eq("dist weibull\n");
  EXPECT_THROW(parse_scenario(no_eq), SpecParseError);
}

TEST(Scenario, GridSyntax) {
  EXPECT_EQ(parse_grid("0:1:3", false), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_NEAR(parse_grid("0.01:1:3", true)[1], 0.1, 1e-15);
  EXPECT_THROW(parse_grid("0:1", false), SpecParseError);
  EXPECT_THROW(parse_grid("0:1:2.5", false), SpecParseError);
  EXPECT_THROW(parse_grid("0:1:3", true), SpecParseError);
}

TEST(Scenario, ResolvesModels) {
  Scenario s;
  s.model = "ou_fpt(y=1,alpha=1,nu=1,xi=0.35)";
  EXPECT_NO_THROW(resolve_model(s));
  s.model = "series(n=2)";
  EXPECT_THROW(resolve_model(s), SpecParseError);
  s.baseline = "exponential(lambda=1)";
  EXPECT_TRUE(resolve_model(s).phm.has_value());
  s.dist = "exponential(lambda=1)";
  EXPECT_THROW(resolve_model(s), SpecParseError);
}

TEST(Diagnostics, ExitCodes) {
  EXPECT_EQ(exit_code_for(SpecParseError("x")), kBadInput);
  EXPECT_EQ(exit_code_for(ParameterError("x")), kBadInput);
  EXPECT_EQ(exit_code_for(DomainError("x")), kDomain);
  EXPECT_EQ(exit_code_for(QuadratureError("x", 0, 0, 0)), kNumerical);
  EXPECT_EQ(diagnostic(3, "a\nb"), "error[3]: a b");
}

TEST(Cli, ExponentialTable) {
  const CliRun r = run("measure --dist \"exponential(lambda=1)\" --grid 0:5:11 --measures H,V");
  ASSERT_EQ(r.code, 0) << r.out;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,H,V");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    double t, h, v;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &h, &v), 3);
    EXPECT_NEAR(h, 1.0, 1e-9);
    EXPECT_NEAR(v, 1.0, 1e-9);
  }
  EXPECT_EQ(rows, 11);
}

TEST(Cli, TriangularConstant) {
  const CliRun r = run("measure --dist \"triangular()\" --grid 0:0.9:10 --measures V");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) EXPECT_NEAR(std::stod(line.substr(line.find(',') + 1)), 0.25, 1e-9);
}

TEST(Cli, ScenarioFileAndFlagOverride) {
  const std::string file = std::string(RESVAR_TEST_DATA) + "/series_genexp.scenario";
  const CliRun a = run("measure --scenario " + file);
  const CliRun b = run("measure --model \"phm(a=3)\" --baseline \"genexp(lambda=0.9,b=2)\" --grid 0:4:40 --measures H,V");
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  const CliRun c = run("measure --scenario " + file + " --measures V --jobs 4");
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.out.substr(0, 4), "t,V\n");
}

TEST(Cli, Discrete) {
  EXPECT_EQ(run("discrete --three-point p=0.1 q=0.1").out, "H = 0.639032\nV = 0.691852\n");
  EXPECT_EQ(run("discrete --bernoulli theta=0.337009").out, "H = 0.639032\nV = 0.102301\n");
  EXPECT_EQ(run("discrete --bernoulli theta=1").out, "H = 0.000000\nV = 0.000000\n");
  const CliRun bad = run("discrete --three-point p=0.7 q=0.7");
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(bad.out.rfind("error[2]: ", 0), 0u);
}

TEST(Cli, ErrorCodes) {
  CliRun r = run("measure --dist \"uniform(theta=1)\" --grid 0:2:3");
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.out.rfind("error[3]: at age t = 1", 0), 0u) << r.out;
  r = run("measure --dist \"nosuch()\"");
  EXPECT_EQ(r.code, 2);
  r = run("measure --dist \"exponential(lambda=1)\" --grid 0:1");
  EXPECT_EQ(r.code, 2);
  r = run("measure --dist \"exponential(lambda=1)\" --measures bound_w");
  EXPECT_EQ(r.code, 2);
  r = run("measure --dist \"exponential(lambda=1)\" --rel-tol 1e-30 --abs-tol 1e-300");
  EXPECT_EQ(r.code, 4) << r.out;
  EXPECT_EQ(r.out.rfind("error[4]: ", 0), 0u);
  r = run("verify nosuch");
  EXPECT_EQ(r.code, 2);
  r = run("--bogus");
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, PhmAndOuSubcommands) {
  CliRun r = run("phm --baseline \"exponential(lambda=1)\" --a 1 --grid 0:2:3 --interval-k 2");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "t,H,V,interval_lo,interval_hi");
  r = run("ou-fpt --xi 0.35 --grid 0.5:3:4 --with-errors");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "t,H,H_err,V,V_err");
}

TEST(Cli, VerifySuitePasses) {
  const CliRun r = run("verify table1");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find(" 0 failed"), std::string::npos);
}
