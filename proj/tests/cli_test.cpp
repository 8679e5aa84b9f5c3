// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace msmp {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("msmp_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(Cli, MusDeletion) {
  auto f = write("small.cnf", "p cnf 2 3\n1 0\n-1 0\n2 0\n");
  EXPECT_EQ(run({"mus", f, "--alg", "deletion"}), 0);
  EXPECT_EQ(out_.str(), "v 1 2 0\n");
}

TEST_F(Cli, IllPosedExitCode) {
  auto f = write("sat.cnf", "p cnf 1 1\n1 0\n");
  EXPECT_EQ(run({"mus", f}), 1);
  EXPECT_NE(err_.str().find("FMUS requires F ⊨ ⊥"), std::string::npos);
  EXPECT_EQ(run({"mus", f, "--assume-wellposed"}), 0);
}

TEST_F(Cli, ParseErrorExitCode) {
  auto f = write("bad.cnf", "p cnf 1 1\n1 -1 0\n");
  EXPECT_EQ(run({"mus", f}), 2);
  EXPECT_NE(err_.str().find("line 2"), std::string::npos) << err_.str();
  EXPECT_EQ(run({"frobnicate"}), 2);
  EXPECT_EQ(run({"mus", f, "--alg", "magic"}), 2);
  EXPECT_EQ(run({"mus", (dir_ / "missing.cnf").string()}), 2);
}

TEST_F(Cli, OracleFailureExitCode) {
  auto f = write("small.cnf", "p cnf 2 3\n1 0\n-1 0\n2 0\n");
  EXPECT_EQ(run({"mus", f, "--solver", "exec:/nonexistent/solver"}), 3);
}

TEST_F(Cli, BackboneJson) {
  auto f = write("f.cnf", "p cnf 3 2\n1 0\n2 3 0\n");
  EXPECT_EQ(run({"backbone-full", f, "--stats", "json"}), 0);
  auto j = nlohmann::json::parse(out_.str());
  EXPECT_EQ(j["problem"], "FBB");
  EXPECT_EQ(j["answer"], nlohmann::json::array({1}));
  EXPECT_GE(j["oracle_calls"].get<int>(), 1);
  EXPECT_TRUE(j.contains("time_ms"));
}

TEST_F(Cli, SideInputs) {
  auto f = write("f.cnf", "p cnf 3 2\n1 0\n2 3 0\n");
  auto m = write("m.txt", "v 1 2 -3 0\n");
  EXPECT_EQ(run({"backbone", f, "--model", m}), 0);
  EXPECT_EQ(out_.str(), "v 1 0\n");
  EXPECT_EQ(run({"backbone", f}), 0);
  EXPECT_EQ(out_.str(), "v 1 0\n");

  auto g = write("g.cnf", "p cnf 2 2\n1 2 0\n1 0\n");
  EXPECT_EQ(run({"leic", g, "--unit-index", "2"}), 0);
  EXPECT_EQ(out_.str(), "v 1 -2 0\n");
  EXPECT_EQ(run({"leic", g}), 2);
  EXPECT_EQ(run({"pic", g, "--clause", "1 2"}), 0);
  EXPECT_EQ(out_.str(), "v 1 0\n");

  auto t = write("t.fml", "(or x1 (and x1 x2))");
  EXPECT_EQ(run({"pit", t, "--term", "1 2"}), 0);
  EXPECT_EQ(out_.str(), "v 1 0\n");

  auto j = write("j.cnf", "p cnf 2 1\n1 0\n");
  auto n = write("n.cnf", "p cnf 2 3\n1 0\n2 0\n1 2 0\n");
  EXPECT_EQ(run({"mxes", j, "--candidates", n}), 0);
  EXPECT_EQ(out_.str(), "v 1 3 0\n");
  auto i = write("i.fml", "(or x1 x2)");
  EXPECT_EQ(run({"mnes", n, "--target", i, "--alg", "deletion"}), 0);
}

TEST_F(Cli, AutarkyForms) {
  auto f = write("a.cnf", "p cnf 3 4\n1 2 0\n-1 2 0\n3 0\n-3 0\n");
  EXPECT_EQ(run({"autarky", f}), 0);
  std::string l = out_.str();
  EXPECT_EQ(run({"autarky", f, "--aut-form", "b"}), 0);
  EXPECT_EQ(out_.str(), l);
  EXPECT_EQ(l, "v 1 2 0\n");
}

TEST_F(Cli, OptimizationOutput) {
  auto f = write("p.cnf", "p cnf 2 4\n1 0\n-1 0\n2 0\n-2 0\n");
  EXPECT_EQ(run({"smcs", f}), 0);
  EXPECT_EQ(out_.str().substr(0, 4), "o 2\n");
}

TEST_F(Cli, VerifyFlag) {
  auto f = write("small.cnf", "p cnf 2 3\n1 0\n-1 0\n2 0\n");
  for (const char* alg : {"deletion", "insertion", "dichotomic", "quickxplain", "progression"})
    EXPECT_EQ(run({"mcs", f, "--alg", alg, "--verify"}), 0) << err_.str();
}

TEST_F(Cli, StatsPlain) {
  auto f = write("small.cnf", "p cnf 2 3\n1 0\n-1 0\n2 0\n");
  EXPECT_EQ(run({"mus", f, "--alg", "deletion", "--stats", "plain", "--no-time"}), 0);
  EXPECT_NE(out_.str().find("c oracle_calls 4\n"), std::string::npos) << out_.str();
  EXPECT_NE(out_.str().find("c predicate_tests 3\n"), std::string::npos);
}

TEST_F(Cli, Check) {
  auto f = write("small.cnf", "p cnf 2 3\n1 0\n-1 0\n2 0\n");
  EXPECT_EQ(run({"check", "mus", f}), 0);
  EXPECT_EQ(out_.str().substr(0, 5), "1..5\n");
  EXPECT_EQ(out_.str().find("not ok"), std::string::npos);
}

TEST_F(Cli, GenIsDeterministic) {
  EXPECT_EQ(run({"gen", "--seed", "4"}), 0);
  std::string a = out_.str();
  EXPECT_EQ(run({"gen", "--seed", "4"}), 0);
  EXPECT_EQ(out_.str(), a);
  EXPECT_EQ(a.substr(0, 6), "p cnf ");
}

TEST_F(Cli, BenchEmptyDirectory) {
  fs::create_directories(dir_ / "empty");
  EXPECT_EQ(run({"bench", "--dir", (dir_ / "empty").string()}), 0);
  EXPECT_EQ(out_.str(), "problem,alg,r,m,calls,ms\n");
}

TEST_F(Cli, BenchDeletionUsesOneTestPerElement) {
  EXPECT_EQ(run({"bench", "--count", "50", "--alg", "deletion", "--no-time"}), 0) << err_.str();
  std::istringstream in(out_.str());
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    ASSERT_EQ(cells.size(), 6u);
    EXPECT_EQ(cells[2], cells[4]) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 50);
}

TEST_F(Cli, BenchThreadsDoNotChangeOutput) {
  EXPECT_EQ(run({"bench", "--count", "20", "--no-time", "--threads", "1"}), 0);
  std::string one = out_.str();
  EXPECT_EQ(run({"bench", "--count", "20", "--no-time", "--threads", "4"}), 0);
  EXPECT_EQ(out_.str(), one);
}

TEST_F(Cli, BenchDirectory) {
  write("a.cnf", "p cnf 2 3\n1 0\n-1 0\n2 0\n");
  write("b.cnf", "p cnf 1 2\n1 0\n-1 0\n");
  EXPECT_EQ(run({"bench", "--dir", dir_.string(), "--alg", "deletion", "--no-time"}), 0) << err_.str();
  EXPECT_EQ(out_.str(), "problem,alg,r,m,calls,ms\nmus,deletion,3,2,3,0\nmus,deletion,2,2,2,0\n");
}

TEST(CallBound, Formulas) {
  std::uint64_t b = 0;
  ASSERT_TRUE(cli::callBound("deletion", 10, 3, b));
  EXPECT_EQ(b, 10u);
  ASSERT_TRUE(cli::callBound("dichotomic", 8, 2, b));
  EXPECT_EQ(b, 10u);
  ASSERT_TRUE(cli::callBound("progression", 50, 2, b));
  EXPECT_EQ(b, 4u * 2u * (1u + 5u));
  ASSERT_TRUE(cli::callBound("insertion", 5, 2, b));
  EXPECT_EQ(b, 15u);
  EXPECT_FALSE(cli::callBound("quickxplain", 5, 2, b));
}

}  // namespace
}  // namespace msmp
