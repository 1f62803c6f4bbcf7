#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path work = fs::temp_directory_path() / "dhilbert_cli_test";

int run(const std::string& args) {
  const std::string cmd = std::string(DHILBERT_CLI) + " " + args + " > " + (work / "stdout.txt").string() + " 2> " +
                          (work / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override { fs::create_directories(work); }
};

}  // namespace

TEST_F(Cli, ApplyReproducesCenteredKernelTable) {
  write(work / "delta.csv", "x,value\n0,1\n");
  const auto out = work / "out.csv";
  ASSERT_EQ(run("apply --op h --in " + (work / "delta.csv").string() + " --mode window --radius 2 --out " +
                out.string()),
            0);
  EXPECT_EQ(slurp(out),
            "x,value\n-2,0.16976527263135505\n-1,0.4244131815783876\n0,0\n1,-0.4244131815783876\n"
            "2,-0.16976527263135505\n");
}

TEST_F(Cli, ApplyOnEmptyFileGivesZeros) {
  write(work / "empty.csv", "");
  const auto out = work / "zero.csv";
  ASSERT_EQ(run("apply --op h --in " + (work / "empty.csv").string() + " --radius 1 --out " + out.string()), 0);
  EXPECT_EQ(slurp(out), "x,value\n-1,0\n0,0\n1,0\n");
}

TEST_F(Cli, MalformedRowIsUsageError) {
  write(work / "bad.csv", "x,value\na,b\n");
  EXPECT_EQ(run("apply --op h --in " + (work / "bad.csv").string()), 2);
  EXPECT_NE(slurp(work / "stderr.txt").find("bad.csv:2"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("verify --suite nope"), 2);
  EXPECT_EQ(run("verify --no-such-flag"), 2);
  EXPECT_EQ(run("simulate --h0 1e-5"), 2);
}

TEST_F(Cli, VerifyAlgebraPasses) {
  const auto report = work / "verify.json";
  ASSERT_EQ(run("verify --suite algebra --torus 64 --trials 20 --seed 7 --out " + report.string()), 0);
  const auto j = nlohmann::json::parse(slurp(report));
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["config"]["seed"], 7);
  for (const char* key : {"adjoint_plus", "inverse_pm", "isometry_plus", "centered_square", "square_plus"}) {
    EXPECT_LE(j["algebra"][key].get<double>(), 1e-10) << key;
  }
}

TEST_F(Cli, VerifyAllSuitesPass) { EXPECT_EQ(run("verify --suite all --trials 5"), 0); }

TEST_F(Cli, PoissonSubcommands) {
  EXPECT_EQ(run("cr-check --torus 32 --seed 3"), 0);
  EXPECT_EQ(run("lp-check --torus 32 --pairs 3"), 0);
  EXPECT_EQ(run("weak-check --torus 32 --pairs 3"), 0);
  const auto grid = work / "grid.csv";
  EXPECT_EQ(run("extend --torus 8 --ny 3 --csv " + grid.string()), 0);
  EXPECT_EQ(slurp(grid).rfind("x,y,u,v\n", 0), 0u);
}

TEST_F(Cli, SimulateReportShape) {
  const auto report = work / "sim.json";
  // Too few paths to meet the capped-fraction threshold reliably, so only the report shape is checked.
  const int code = run("simulate --torus 8 --paths 300 --y0 2 --seed 5 --out " + report.string());
  EXPECT_TRUE(code == 0 || code == 1);
  const auto j = nlohmann::json::parse(slurp(report));
  for (const char* key : {"config", "estimate", "reference", "max_abs_z", "capped_fraction", "jumps_per_unit_time",
                          "wall_ms"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["config"]["t_cap"], 200.0);
  EXPECT_EQ(j["estimate"].size(), 8u);
  EXPECT_EQ(j["estimate"][0].size(), 5u);
}

TEST_F(Cli, SeedFromEnvironment) {
  const auto a = work / "a.json";
  const auto b = work / "b.json";
  ASSERT_EQ(run("lp-check --pairs 1 --out " + a.string()), 0);
  ASSERT_EQ(setenv("DHILBERT_SEED", "77", 1), 0);
  ASSERT_EQ(run("lp-check --pairs 1 --out " + b.string()), 0);
  unsetenv("DHILBERT_SEED");
  EXPECT_EQ(nlohmann::json::parse(slurp(b))["config"]["seed"], 77);
  EXPECT_NE(slurp(a), slurp(b));
}
