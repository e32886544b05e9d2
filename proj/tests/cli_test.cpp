#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run(const std::string& args, const fs::path& out) {
  const std::string cmd = std::string(SLCYL_BIN) + " " + args + " --out " + out.string() + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path dir(const std::string& name) {
  const fs::path d = fs::path(SLCYL_TEST_OUT) / name;
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST(Cli, NeckSymmetric) {
  const auto d = dir("neck");
  EXPECT_EQ(run("neck --a 1,1,1", d), 0);
  const auto j = json::parse(slurp(d / "neck.json"));
  EXPECT_EQ(j["schema_version"], 1);
  for (double t : j["theta"]) EXPECT_NEAR(t, std::numbers::pi / 3, 1e-8);
  EXPECT_NEAR(j["A"].get<double>(), 0.607162661971895, 1e-12);
  EXPECT_TRUE(fs::exists(d / "neck_table.csv"));
  EXPECT_TRUE(fs::exists(d / "decay.svg"));
}

TEST(Cli, NeckTargetAngles) {
  const auto d = dir("target");
  EXPECT_EQ(run("neck --target-angles 0.9,1.0,1.2416", d), 0);
  const auto j = json::parse(slurp(d / "neck.json"));
  EXPECT_NEAR(j["theta_sum"].get<double>(), std::numbers::pi, 1e-8);
  EXPECT_NEAR(j["theta"][0].get<double>(), 0.9, 1e-8);
}

TEST(Cli, NeckRejectsTwoPlanes) {
  const auto d = dir("reject");
  EXPECT_NE(run("neck --a 1,1", d), 0);
  const auto j = json::parse(slurp(d / "neck_error.json"));
  EXPECT_NE(j["error"].get<std::string>().find("n >= 3"), std::string::npos);
}

TEST(Cli, ConfigFileAndOverride) {
  const auto d = dir("config");
  fs::create_directories(d);
  std::ofstream(d / "run.ini") << "[harmonic]\ndegree = 2\nn = 4\n";
  EXPECT_EQ(run("harmonic --config " + (d / "run.ini").string(), d), 0);
  auto j = json::parse(slurp(d / "harmonic.json"));
  EXPECT_EQ(j["coeffs_exact"], json::array({"-3/2", "1/8"}));
  EXPECT_EQ(run("harmonic --n 3 --config " + (d / "run.ini").string(), d), 0);
  j = json::parse(slurp(d / "harmonic.json"));
  EXPECT_EQ(j["coeffs_exact"], json::array({"-2", "1/5"}));
}

TEST(Cli, OutputDirFromEnvironment) {
  const auto d = dir("env");
  const std::string cmd = "SLCYL_OUTPUT_DIR=" + d.string() + " " + SLCYL_BIN + " harmonic > /dev/null 2>&1";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_TRUE(fs::exists(d / "harmonic.json"));
}

TEST(Cli, ProbeIsReproducible) {
  const auto d1 = dir("probe1"), d2 = dir("probe2");
  EXPECT_EQ(run("probe --scales 6..9 --samples 200", d1), 0);
  EXPECT_EQ(run("probe --scales 6..9 --samples 200", d2), 0);
  EXPECT_EQ(slurp(d1 / "probe.csv"), slurp(d2 / "probe.csv"));
  EXPECT_EQ(slurp(d1 / "probe.json"), slurp(d2 / "probe.json"));
}

TEST(Cli, VerifySubsetWritesReport) {
  const auto d = dir("verify");
  EXPECT_EQ(run("verify --only 1,5,8", d), 0);
  const auto j = json::parse(slurp(d / "report.json"));
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["checks"].size(), 3u);
  EXPECT_TRUE(j["all_pass"].get<bool>());
  EXPECT_TRUE(fs::exists(d / "summary.csv"));
}

TEST(Cli, VerifyRejectedConfigStillWritesReport) {
  const auto d = dir("verify_bad");
  EXPECT_NE(run("verify --degree 1", d), 0);
  const auto j = json::parse(slurp(d / "report.json"));
  EXPECT_FALSE(j["all_pass"].get<bool>());
}

TEST(Cli, AssembleWritesRegionMap) {
  const auto d = dir("assemble");
  EXPECT_EQ(run("assemble --points 80", d), 0);
  EXPECT_TRUE(fs::exists(d / "region_map.svg"));
  EXPECT_TRUE(fs::exists(d / "points.csv"));
  EXPECT_TRUE(fs::exists(d / "cancellation.csv"));
}
