#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#ifndef DPS_CLI_PATH
#error "DPS_CLI_PATH must point at the dps executable"
#endif

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(DPS_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, YukawaIsDeterministicAcrossThreadCounts) {
  const CliRun a = run("yukawa --mu 0.75 --n-max 12");
  const CliRun b = run("yukawa --mu 0.75 --n-max 12");
  const CliRun c = run("yukawa --mu 0.75 --n-max 12", "DPS_THREADS=3");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  EXPECT_NE(a.out.find("# mu=0.75"), std::string::npos);
  EXPECT_NE(a.out.find("n1,x,w_discrete"), std::string::npos);
}

TEST(Cli, OutFileAndTsv) {
  const std::string path = ::testing::TempDir() + "dps_coulomb.tsv";
  const std::string gp = ::testing::TempDir() + "dps_coulomb.gp";
  const CliRun r = run("coulomb --n-max 3 --format tsv --out " + path + " --gnuplot " + gp);
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  const std::string body = slurp(path);
  EXPECT_NE(body.find("index\tx\tw_discrete"), std::string::npos);
  EXPECT_NE(body.find("\n0\t1\t2\t"), std::string::npos);
  EXPECT_NE(slurp(gp).find("plot '" + path + "'"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("yukawa").code, 2);                      // --mu is required
  EXPECT_EQ(run("yukawa --mu 0").code, 2);               // mu must be positive
  EXPECT_EQ(run("yukawa --mu -1").code, 2);
  EXPECT_EQ(run("yukawa --mu 1 --gh-nodes 4").code, 2);  // below the accepted range
  EXPECT_EQ(run("yukawa --mu 1 --tol 0").code, 2);
  EXPECT_EQ(run("yukawa --mu 1 --format xml").code, 2);
  EXPECT_EQ(run("greens --mu 1 --n 1,2").code, 2);
  EXPECT_EQ(run("moller --r1 3").code, 2);
  EXPECT_EQ(run("yukawa --mu 1 --out /nonexistent/dir/x.csv").code, 2);
  EXPECT_EQ(run("yukawa --mu 1", "DPS_THREADS=0").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, NonConvergenceExitCode) {
  // one Legendre panel budget and a tolerance no rule can meet
  EXPECT_EQ(run("greens --mu 0.05 --n 6,6,6 --nhat 0,0,0 --gh-nodes 8 --radial-nodes 16 --tol 1e-300").code, 3);
}

TEST(Cli, GreensAndMoller) {
  const CliRun g = run("greens --mu 1 --n 2,0,0 --nhat 0,0,0 --tensor");
  ASSERT_EQ(g.code, 0);
  EXPECT_NE(g.out.find("0.0992962802308"), std::string::npos);
  const CliRun m = run("moller --n-max 8");
  ASSERT_EQ(m.code, 0);
  EXPECT_NE(m.out.find("discrete_re"), std::string::npos);
}

TEST(Cli, CheckSuiteAndNegativeControl) {
  const CliRun ok = run("check --suite fast");
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_EQ(ok.out.find(",0\n"), std::string::npos);
  const CliRun bad = run("check --suite fast --inject-fault gamma");
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("dirac.clifford"), std::string::npos);
}
