#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "decrsp/cli.hpp"

namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("decrsp_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& body) {
    fs::path p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "decrsp");
    std::vector<const char*> argv;
    for (const std::string& s : args) argv.push_back(s.c_str());
    out_.str("");
    err_.str("");
    return decrsp::run_cli(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

const char* kPath = "4 3 5\n0 1 2\n1 2 3\n2 3 4\n";

TEST_F(CliTest, ExactSsspAnswersQueries) {
  std::string g = write("g.txt", kPath);
  std::string u = write("u.txt", "Q 0 3\nD 1 2\nQ 0 3\nQ 0 1\n");
  EXPECT_EQ(run({"sssp", "--graph", g, "--updates", u, "--exact"}), 0) << err_.str();
  EXPECT_EQ(out_.str(), "9\ninf\n2\n");
}

TEST_F(CliTest, SsspWithoutQueriesPrintsFinalEstimates) {
  std::string g = write("g.txt", kPath);
  EXPECT_EQ(run({"sssp", "--graph", g, "--exact"}), 0) << err_.str();
  EXPECT_EQ(out_.str(), "0 0\n1 2\n2 5\n3 9\n");
}

TEST_F(CliTest, ApspOracleCheckWritesReport) {
  std::string g = write("g.txt", kPath);
  std::string u = write("u.txt", "Q 3 0\nI 0 1 5\nQ 1 3\n");
  std::string report = (dir_ / "r.txt").string();
  EXPECT_EQ(run({"apsp", "--graph", g, "--updates", u, "--oracle-check", "--report", report}), 0) << err_.str();
  std::ifstream in(report);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_NE(text.find("algorithm=apsp"), std::string::npos);
  EXPECT_NE(text.find("status=PASS"), std::string::npos);
}

TEST_F(CliTest, MalformedInputExitsWithTwo) {
  std::string g = write("g.txt", "3 1 2\n0 1 9\n");
  EXPECT_EQ(run({"sssp", "--graph", g}), 2);
  EXPECT_NE(err_.str().find("line 2"), std::string::npos) << err_.str();
  EXPECT_EQ(run({"sssp", "--graph", (dir_ / "missing").string()}), 2);
}

TEST_F(CliTest, UnknownModeIsRejected) { EXPECT_NE(run({"frobnicate"}), 0); }

TEST_F(CliTest, CheckPassesOnGeneratedInstance) {
  EXPECT_EQ(run({"check", "--target", "sssp", "--n", "30", "--m", "70", "--seed", "4"}), 0) << out_.str();
  EXPECT_NE(out_.str().find("status=PASS"), std::string::npos);
  EXPECT_EQ(run({"check", "--model", "grid", "--n", "25", "--m", "40", "--hopset-delta", "2"}), 0) << out_.str();
  EXPECT_NE(out_.str().find("mode=hopset"), std::string::npos);
}

TEST_F(CliTest, BenchReportsBothPaths) {
  EXPECT_EQ(run({"bench", "--target", "es", "--n", "30", "--m", "60"}), 0);
  EXPECT_NE(out_.str().find("serial.wall_ms="), std::string::npos);
  EXPECT_NE(out_.str().find("parallel.wall_ms="), std::string::npos);
}

}  // namespace
