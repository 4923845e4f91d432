#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rotlab/cli/suites.hpp"

namespace fs = std::filesystem;
using namespace rotlab::cli;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"rotlab"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("rotlab_cli_" + std::string(info->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  nlohmann::json load(const std::string& name) const {
    std::ifstream in(path(name));
    return nlohmann::json::parse(in);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GhysPassesAndWritesReport) {
  const auto r = invoke({"--out", dir_.string(), "--window", "6", "--N", "500", "ghys", "--spec",
                         "rigid:0.3", "--spec", "arnold:0.4:0.9"});
  EXPECT_EQ(r.code, kExitPass) << r.err;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  const auto rep = load("ghys_report.json");
  ASSERT_EQ(rep["cases"].size(), 2u);
  EXPECT_EQ(rep["summary"]["pass_count"], 2);
  EXPECT_EQ(rep["summary"]["fail_count"], 0);
  EXPECT_TRUE(rep.contains("timing"));
}

TEST_F(CliTest, MalformedSpecIsAnInputError) {
  EXPECT_EQ(invoke({"--out", dir_.string(), "ghys", "--spec", "rigid:abc"}).code, kExitInput);
  EXPECT_EQ(invoke({"--out", dir_.string(), "ghys", "--spec", "spiral:0.1"}).code, kExitInput);
  EXPECT_EQ(invoke({"--out", dir_.string(), "ghys"}).code, kExitInput);
  EXPECT_EQ(invoke({"--out", dir_.string(), "--window", "-1", "ghys", "--spec", "rigid:0.3"}).code,
            kExitInput);
}

TEST_F(CliTest, NonSymplecticMatrixIsRejected) {
  const auto bad = write("bad.txt", "2 0\n0 2\n");
  const auto r = invoke({"--out", dir_.string(), "sp", "--matrix", bad});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("not symplectic"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("bad.txt"), std::string::npos) << r.err;
}

TEST_F(CliTest, IdentityMatrixPassesWithZeros) {
  const auto id = write("id.txt", "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
  const auto r = invoke({"--out", dir_.string(), "--window", "4", "--N", "100", "sp", "--matrix", id});
  EXPECT_EQ(r.code, kExitPass) << r.err;
  const auto rep = load("sp_report.json");
  ASSERT_EQ(rep["cases"].size(), 1u);
  const auto& c = rep["cases"][0];
  EXPECT_EQ(c["pass"], true);
  EXPECT_EQ(c["sigma_max_abs"], 0);
  EXPECT_NEAR(c["diff_mod1"].get<double>(), 0.0, 1e-12);
}

TEST_F(CliTest, RandomSuiteIsDeterministic) {
  const std::initializer_list<std::string> args = {
      "--out", dir_.string(), "--seed", "7", "--window", "4", "--N", "2000", "--threads", "2",
      "sp", "--random", "n=1,count=4"};
  ASSERT_EQ(invoke(args).code, kExitPass);
  const auto first = deterministic_dump(load("sp_report.json"));
  ASSERT_EQ(invoke(args).code, kExitPass);
  EXPECT_EQ(deterministic_dump(load("sp_report.json")), first);
  EXPECT_EQ(first.find("wall_time"), std::string::npos);
}

TEST_F(CliTest, ConfigFileIsOverriddenByFlags) {
  const auto cfg = write("run.ini", "seed = 11\nwindow = 5\nN = 2000\n");
  ASSERT_EQ(invoke({"--config", cfg, "--out", dir_.string(), "--window", "3", "ghys", "--spec",
                    "rigid:0.25"})
                .code,
            kExitPass);
  const auto rep = load("ghys_report.json");
  EXPECT_EQ(rep["config"]["seed"], 11);
  EXPECT_EQ(rep["config"]["window"], 3);
  EXPECT_EQ(rep["config"]["N"], 2000);
}

TEST_F(CliTest, ConvergeRigidIsConstant) {
  const auto r = invoke({"--out", dir_.string(), "--kmax", "16", "converge", "--spec", "rigid:0.3"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  std::ifstream in(path("converge.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "k,estimate,error_bound,raw_estimate,raw_bound");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::stringstream ss(line);
    std::string k, est;
    std::getline(ss, k, ',');
    std::getline(ss, est, ',');
    EXPECT_NEAR(std::stod(est), 0.3, 1e-12) << line;
  }
  EXPECT_GT(rows, 0);
}

TEST(Converge, BoundIsNonincreasing) {
  const auto rows = converge_circle("arnold:0.4:0.9", 256);
  ASSERT_FALSE(rows.empty());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LE(rows[i].error_bound, rows[i - 1].error_bound);
    EXPECT_LE(rows[i].error_bound, rows[i].raw_bound);
  }
  Eigen::MatrixXd g(2, 2);
  g << 0.8, -0.6, 0.6, 0.8;
  const auto sp_rows = converge_symplectic(g, 32);
  ASSERT_FALSE(sp_rows.empty());
  for (std::size_t i = 1; i < sp_rows.size(); ++i) {
    EXPECT_LE(sp_rows[i].error_bound, sp_rows[i - 1].error_bound);
  }
  EXPECT_NEAR(sp_rows.back().estimate, std::atan2(0.6, 0.8) / (2 * M_PI), 1e-9);
}
