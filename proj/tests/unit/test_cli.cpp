#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PLANAR_CODE_LAB) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, Describe) {
  const auto r = run("describe --distance 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("qubits").size(), 13u);
  EXPECT_EQ(run("describe --distance 1").code, 1);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("nonsense").code, 1);
  EXPECT_EQ(run("threshold").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, ThresholdWithOverrides) {
  const auto cfg = write_temp("cli_threshold.json", R"({"experiment": "threshold", "distances": [3],
      "noise": {"model": "independent_xz", "p": [0.05, 0.1]}, "trials": 1000, "seed": 1})");
  const auto a = run("threshold --config " + cfg + " --trials 50 --workers 1");
  const auto b = run("threshold --config " + cfg + " --trials 50 --workers 3");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find(",50,"), std::string::npos);
  EXPECT_NE(run("threshold --config " + cfg + " --trials 50 --seed 2").out, a.out);
  const auto j = run("threshold --config " + cfg + " --trials 20 --format json");
  EXPECT_EQ(nlohmann::json::parse(j.out).at("rows").size(), 2u);
}

TEST(Cli, ConfigErrorsExitWithOne) {
  const auto bad = write_temp("cli_bad.json", "{\n\"experiment\": \"threshold\",\n\"distances\": [3],\n\"noise\": {\"p\": 7}\n}");
  EXPECT_EQ(run("threshold --config " + bad).code, 1);
  const auto life = write_temp("cli_life.json", R"({"experiment": "lifetime", "system": {"kind": "ising1d"},
      "sizes": [8], "beta": [1], "trials": 3, "horizon": 100})");
  EXPECT_EQ(run("threshold --config " + life).code, 1);
  EXPECT_EQ(run("lifetime --config " + life).code, 0);
  EXPECT_EQ(run("threshold --config /nonexistent.json").code, 1);
}

TEST(Cli, Decode) {
  const auto syn = write_temp("cli_syn.json", R"({"distance": 5, "m_defects": [3, 9], "e_defects": [0]})");
  const auto r = run("decode --syndrome " + syn);
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("total_weight").get<int>(), 4);
  EXPECT_TRUE(j.contains("frame"));
  const auto out_of_range = write_temp("cli_syn_bad.json", R"({"distance": 3, "m_defects": [99]})");
  EXPECT_EQ(run("decode --syndrome " + out_of_range).code, 1);
}

TEST(Cli, BraidDemoPrintsEventLines) {
  const auto r = run("braid-demo --size 8 --control 1 --target 0");
  EXPECT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  int lines = 0;
  nlohmann::json last;
  while (std::getline(in, line)) {
    last = nlohmann::json::parse(line);
    ++lines;
  }
  EXPECT_GT(lines, 10);
  EXPECT_TRUE(last.at("matches_cnot").get<bool>());
  EXPECT_EQ(run("braid-demo --size 5").code, 1);
}
