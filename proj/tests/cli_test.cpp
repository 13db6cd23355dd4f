// Drives the ratshare binary end to end.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(RATSHARE_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("ratshare_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  fs::path dir_;
};

TEST_F(CliTest, ShareThenReconstructAnyPair) {
  const auto csv = (dir_ / "s.csv").string();
  ASSERT_EQ(run("share --p 7 --k 2 --n 3 --secret 3 --seed 1 --out " + csv).code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "s.json"));
  std::ifstream in(csv);
  std::string header, l1, l2, l3;
  std::getline(in, header);
  std::getline(in, l1);
  std::getline(in, l2);
  std::getline(in, l3);
  EXPECT_EQ(header, "participant,x,y");
  for (const auto& [a, b] : {std::pair{l1, l2}, std::pair{l1, l3}, std::pair{l2, l3}}) {
    const auto pair = write("pair.csv", header + "\n" + a + "\n" + b + "\n");
    EXPECT_EQ(run("reconstruct --p 7 " + pair).out, "3\n");
  }
  // The sidecar supplies p.
  EXPECT_EQ(run("reconstruct " + csv).out, "3\n");
}

TEST_F(CliTest, ShareToStdout) {
  const auto r = run("share --p 7 --k 1 --n 2 --secret 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "participant,x,y\n1,1,4\n2,2,4\n");
  EXPECT_EQ(run("share --p 7 --k 2 --n 3 --secret 3 --seed 1").out,
            run("share --p 7 --k 2 --n 3 --secret 3 --seed 1").out);
}

TEST_F(CliTest, ShareRejectsTooManyParticipants) {
  const auto r = run("share --p 5 --k 3 --n 6");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, ReconstructExamples) {
  EXPECT_EQ(run("reconstruct --p 7 " + write("a.csv", "participant,x,y\n1,1,5\n2,2,0\n")).out, "3\n");
  EXPECT_EQ(run("reconstruct --p 7 " + write("b.csv", "participant,x,y\n4,4,6\n")).out, "6\n");
  const auto dup = run("reconstruct --p 7 " + write("c.csv", "participant,x,y\n1,1,5\n1,1,5\n"));
  EXPECT_EQ(dup.code, 2);
  EXPECT_TRUE(dup.out.empty());
  EXPECT_EQ(run("reconstruct --p 7 " + write("d.csv", "garbage\n")).code, 2);
}

TEST_F(CliTest, AnalyzeCommonGood) {
  const auto cfg = write("g.json", R"({"access":{"type":"threshold","n":3,"k":2},
                                       "utilities":{"model":"common_good","N":[5,5,5],"c":1}})");
  const auto r = run("analyze --config " + cfg);
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("brute_force_ne").size(), 4U);
  EXPECT_TRUE(j.at("match").get<bool>());
  EXPECT_EQ(j.at("good_kind"), "non_rivalrous_non_excludable");
}

TEST_F(CliTest, AnalyzeGreedy) {
  const auto cfg = write("g.json", R"({"access":{"type":"threshold","n":3,"k":2},
                                       "utilities":{"model":"greedy","A":3,"B":1}})");
  const auto r = run("analyze --config " + cfg);
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("dominance_survivors"), json::parse("[[0,0,0]]"));
  EXPECT_EQ(j.at("payoff_equivalent_ne"), json::parse("[[1,1,1]]"));
  EXPECT_TRUE(j.at("axioms_hold").get<bool>());
}

TEST_F(CliTest, AnalyzeErrors) {
  EXPECT_EQ(run("analyze --config " + write("a.json", R"({"access":{"type":"threshold","n":3,"k":2},
              "utilities":{"model":"common_good","N":[5,5],"c":1}})")).code, 2);
  EXPECT_EQ(run("analyze --config " + write("b.json", R"({"access":{"type":"threshold","n":3,"k":2},
              "utilities":{"model":"common_good","N":[5,1,5],"c":1}})")).code, 3);
  EXPECT_EQ(run("analyze --config " + (dir_ / "missing.json").string()).code, 2);
}

TEST_F(CliTest, VerifyExitCodes) {
  EXPECT_EQ(run("verify --suite ht --max-n 5").code, 0);
  EXPECT_EQ(run("verify --suite async").code, 0);
  EXPECT_EQ(run("verify --suite nope").code, 2);
  EXPECT_EQ(run("verify --suite ht --max-n 1").code, 2);
}

TEST_F(CliTest, VerifyTheorem3) {
  const auto r = run("verify --suite theorem3 --max-n 5 --seed 7");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find(R"("pass":true,"seed":7)"), std::string::npos);
}

TEST_F(CliTest, Simulate) {
  const auto cfg = write("s.json", R"({"access":{"type":"threshold","n":3,"k":2},
                                       "utilities":{"model":"common_good","N":[4,4,4],"c":1}})");
  const auto r = run("simulate --config " + cfg + " --profile 0.5,0.5,0.5 --samples 100000 --seed 42");
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(j["exact"][i].get<double>(), 1.5, 1e-12);
    EXPECT_LE(std::abs(j["means"][i].get<double>() - 1.5), 4 * j["stderr"][i].get<double>());
  }
  EXPECT_EQ(j["samples"], 100000);
  EXPECT_EQ(run("simulate --config " + cfg + " --profile 0.5,0.5,0.5 --samples 100000 --seed 42").out, r.out);

  const auto zero = json::parse(run("simulate --config " + cfg + " --profile 0,0,0 --samples 1000").out);
  EXPECT_EQ(zero["means"], json::parse("[0.0,0.0,0.0]"));
  EXPECT_EQ(zero["exact"], json::parse("[0.0,0.0,0.0]"));
  const auto one = json::parse(run("simulate --config " + cfg + " --profile 1,1,1 --samples 1000").out);
  EXPECT_EQ(one["exact"], json::parse("[3.0,3.0,3.0]"));
  EXPECT_EQ(one["stderr"], json::parse("[0.0,0.0,0.0]"));

  EXPECT_EQ(run("simulate --config " + cfg + " --profile 0.5,0.5").code, 2);
  EXPECT_EQ(run("simulate --config " + cfg + " --profile 0.5,x,0.5").code, 2);
}

TEST_F(CliTest, BadThreadEnvIsRejected) {
  const auto r = run("verify --suite ht");
  EXPECT_EQ(r.code, 0);
  const std::string cmd = std::string("RATSHARE_THREADS=0 ") + RATSHARE_CLI + " verify --suite ht >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 2);
}

}  // namespace
