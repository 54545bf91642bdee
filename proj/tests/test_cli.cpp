#include <json.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

using Json = nlohmann::json;

struct CliRun {
  int code = -1;
  std::string out;
  Json json() const { return Json::parse(out); }
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(GALJAC_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string sample(const std::string& name) { return std::string(GALJAC_SAMPLES_DIR) + "/" + name; }

}  // namespace

TEST(Cli, JacobianOfTriangle) {
  const CliRun r = run("jacobian " + sample("c3.json"));
  ASSERT_EQ(r.code, 0);
  const Json j = r.json();
  EXPECT_EQ(j["invariant_factors"], Json::array({3}));
  EXPECT_EQ(j["trees"], 3);
}

TEST(Cli, ShiftRoutesAgree) {
  const CliRun r = run("fitt-shift --orders 2,2");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.json()["equal"].get<bool>());
  EXPECT_EQ(r.json()["presentation"], r.json()["closed_form"]);
}

TEST(Cli, DeriveAndVerify) {
  CliRun r = run("derive " + sample("loop_c2.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["derived"]["vertices"], 2);
  EXPECT_TRUE(r.json()["connected"].get<bool>());
  r = run("verify-main " + sample("theta_c3.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["summary"]["failures"], 0);
  r = run("verify-norm " + sample("theta_c3.json"));
  EXPECT_EQ(r.code, 0);
}

TEST(Cli, DualityCounterexampleExitsOne) {
  const CliRun r = run("verify-duality " + sample("klein_duality.json"));
  EXPECT_EQ(r.code, 1);
  const Json v = r.json()["instances"][0]["verdicts"];
  EXPECT_TRUE(v["Z[G]: Fitt(Jac^dual) = iota Fitt(Jac)"].get<bool>());
  EXPECT_FALSE(v["Rbar: Fitt(M^dual) = iota Fitt(M), M = Jac/NJac"].get<bool>());
}

TEST(Cli, ZetaAndTowers) {
  CliRun r = run("zeta " + sample("theta_c3.json") + " --truncate 6");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.json()["report"]["failures"].empty());
  r = run("iwasawa " + sample("bouquet_tower.json") + " --layers 5");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["result"]["fit"]["lambda"], 1);
  EXPECT_EQ(r.json()["result"]["z_series"]["coefficients"], Json::array({0, 0, -1}));
  r = run("iwasawa " + sample("bouquet_tower.json") + " -p 5 --layers 3");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["tower"]["prime"], 5);
  r = run("kida " + sample("kida_c2.json") + " --layers 6");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["result"]["cover"]["weierstrass_of_z_over_t"]["lambda"], 3);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("jacobian " + sample("malformed.json")).code, 2);
  EXPECT_EQ(run("jacobian /nonexistent.json").code, 2);
  EXPECT_EQ(run("nonsense").code, 2);
  EXPECT_EQ(run("kida " + sample("bouquet_tower.json")).code, 2);  // no finite part
  EXPECT_EQ(run("zeta " + sample("theta_c3.json") + " --truncate 13").code, 3);
}

TEST(Cli, SeededCorpusIsReproducible) {
  const CliRun a = run("verify-main --orders 3 --cases 3 --seed 5");
  const CliRun b = run("verify-main --orders 3 --cases 3 --seed 5");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.json()["seed"], 5);
  EXPECT_EQ(a.json()["instances"].size(), 3u);
}

TEST(Cli, OutFileAndSelftest) {
  const std::string path = ::testing::TempDir() + "galjac_selftest.json";
  const CliRun r = run("selftest --seed 7 --cases 2 --out " + path);
  EXPECT_EQ(r.code, 0);
  std::ifstream in(path);
  ASSERT_TRUE(in.good());
  const Json j = Json::parse(in);
  EXPECT_EQ(j["seed"], 7);
  for (const auto& c : j["checks"]) EXPECT_TRUE(c["failures"].empty()) << c["claim"];
}
