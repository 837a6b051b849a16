#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("zeno_ent_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliResult run(const std::string& args) {
    const fs::path out = dir_ / "stdout.txt";
    const std::string cmd =
        std::string(ZENO_ENT_CLI) + " " + args + " > " + out.string() + " 2> " + (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read(out);
    return r;
  }

  static std::string read(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static std::size_t lines(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, HelpListsColumns) {
  const auto r = run("--help");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("is_argmax"), std::string::npos);
}

TEST_F(CliTest, StationarySurfaceToFile) {
  const fs::path out = dir_ / "surface.csv";
  const auto r = run("stationary-surface --r1 0:1:11 --s -1,1 --out " + out.string());
  ASSERT_EQ(r.code, 0);
  const auto text = read(out);
  EXPECT_EQ(text.substr(0, text.find('\n')), "r1,s,C_s,is_argmax");
  EXPECT_EQ(lines(text), 23u);
  EXPECT_FALSE(fs::exists(dir_ / "surface.csv.tmp"));
}

TEST_F(CliTest, JsonOutput) {
  const auto r = run("optimum --objective stationary --s 1 --format json");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"scenario\": \"optimum\""), std::string::npos);
  EXPECT_NE(r.out.find("0.866"), std::string::npos);
}

TEST_F(CliTest, ConfigurationErrors) {
  EXPECT_EQ(run("no-such-scenario").code, 2);
  EXPECT_EQ(run("time-evolution --r1 1.5").code, 2);
  EXPECT_EQ(run("time-evolution --big-r 0.1,10").code, 2);
  EXPECT_EQ(run("zeno-compare").code, 2);
  EXPECT_EQ(run("solver-xcheck --dt 0.5 --r1 0.5 --s 1").code, 2);
  EXPECT_EQ(run("time-evolution --solver warp").code, 2);
}

TEST_F(CliTest, ToleranceFailure) {
  const auto r = run("solver-xcheck --big-r 0.1 --r1 0.87 --s 1 --dt 0.1 --tau-steps 101");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find(",0\n"), std::string::npos);
}

TEST_F(CliTest, IoFailure) {
  EXPECT_EQ(run("stationary-surface --r1 0.5 --s 1 --out " + (dir_ / "missing" / "x.csv").string()).code,
            4);
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
  const fs::path cfg = dir_ / "run.toml";
  std::ofstream(cfg) << "bigR = 10\nr1 = 0.5\ns = 1\ntauMax = 1.0\ntauSteps = 3\nsolver = \"ode\"\n";
  const auto fromFile = run("time-evolution --config " + cfg.string());
  ASSERT_EQ(fromFile.code, 0);
  EXPECT_EQ(lines(fromFile.out), 4u);
  EXPECT_NE(fromFile.out.find("C[r1=0.5;s=1]"), std::string::npos);

  const auto overridden = run("time-evolution --config " + cfg.string() + " --tau-steps 5");
  ASSERT_EQ(overridden.code, 0);
  EXPECT_EQ(lines(overridden.out), 6u);
}
