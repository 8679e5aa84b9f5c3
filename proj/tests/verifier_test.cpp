// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "msmp/error.hpp"
#include "msmp/generator.hpp"
#include "msmp/parser.hpp"
#include "msmp/verifier.hpp"
#include "test_util.hpp"

namespace msmp {
namespace {

using Family = std::vector<std::vector<int>>;

TEST(BruteSolve, McsOnComplementaryPair) {
  BruteResult r = bruteSolve(ProblemKind::FMCS, test::instanceOf(test::cnf(1, {{1}, {-1}})));
  EXPECT_FALSE(r.illPosed);
  EXPECT_EQ(r.answers, Family({{1}, {2}}));
}

TEST(BruteSolve, BackboneAndAutarky) {
  EXPECT_EQ(bruteSolve(ProblemKind::FBB, test::instanceOf(test::cnf(3, {{1}, {2, 3}}))).answers,
            Family({{1}}));
  auto aut = test::instanceOf(test::cnf(3, {{1, 2}, {-1, 2}, {3}, {-3}}));
  EXPECT_EQ(bruteSolve(ProblemKind::FAutL, aut).answers, Family({{1, 2}}));
  EXPECT_EQ(bruteSolve(ProblemKind::FAutB, aut).answers, Family({{1, 2}}));
}

TEST(BruteSolve, IllPosed) {
  EXPECT_TRUE(bruteSolve(ProblemKind::FMUS, test::instanceOf(test::cnf(1, {{1}}))).illPosed);
  EXPECT_TRUE(bruteSolve(ProblemKind::FMCS, test::instanceOf(test::cnf(1, {{1}}))).illPosed);
}

TEST(BruteSolve, MssIsComplementOfMcs) {
  InstanceGenerator gen(31);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    auto inst = test::instanceOf(gen.randomCnf());
    BruteResult mcs = bruteSolve(ProblemKind::FMCS, inst);
    if (mcs.illPosed) continue;
    BruteResult mss = bruteSolve(ProblemKind::FMSS, inst);
    int n = static_cast<int>(std::get<CnfFormula>(inst.formula).size());
    Family complements;
    for (const auto& c : mcs.answers) {
      std::vector<int> s;
      for (int k = 1; k <= n; ++k)
        if (!std::binary_search(c.begin(), c.end(), k)) s.push_back(k);
      complements.push_back(s);
    }
    std::sort(complements.begin(), complements.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    EXPECT_EQ(mss.answers, complements);
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(BruteSolve, AnswersAreCanonicallyOrdered) {
  BruteResult r = bruteSolve(ProblemKind::FMUS, test::instanceOf(test::cnf(2, {{1}, {-1}, {2}, {-2}, {1, 2}})));
  for (std::size_t i = 1; i < r.answers.size(); ++i) {
    const auto& a = r.answers[i - 1];
    const auto& b = r.answers[i];
    EXPECT_TRUE(a.size() < b.size() || (a.size() == b.size() && a < b));
  }
}

TEST(BruteSolve, Budget) {
  BruteForceBudget b;
  b.maxElements = 2;
  EXPECT_THROW(bruteSolve(ProblemKind::FMUS, test::instanceOf(test::cnf(1, {{1}, {-1}, {1}})), b),
               BudgetError);
}

TEST(CheckAnswer, MusOnUnsatPair) {
  auto inst = test::instanceOf(test::cnf(2, {{1}, {-1}, {2}}));
  ProblemAnswer a;
  a.kind = ProblemKind::FMUS;
  a.values = {1, 2};
  EXPECT_TRUE(checkAnswer(a, inst).ok);
  a.values = {1, 2, 3};
  CheckResult r = checkAnswer(a, inst);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.reason.empty());
}

TEST(CheckAnswer, OptimumMismatch) {
  auto inst = test::instanceOf(test::cnf(2, {{1}, {-1}, {2}, {-2}}));
  ProblemAnswer a;
  a.kind = ProblemKind::FSMCS;
  a.optimum = 3;
  a.values = {1, 2, 3};
  EXPECT_FALSE(checkAnswer(a, inst).ok);
  a.optimum = 2;
  a.values = {1, 3};
  EXPECT_TRUE(checkAnswer(a, inst).ok);
}

TEST(HittingSets, AllIntersect) {
  EXPECT_TRUE(allIntersect({{1, 2}}, {{1}, {2}}));
  EXPECT_FALSE(allIntersect({{1, 2}, {3}}, {{1}}));
}

TEST(Tap, Lines) {
  EXPECT_EQ(tapLine(1, true, "a"), "ok 1 - a");
  EXPECT_EQ(tapLine(2, false, "b"), "not ok 2 - b");
}

TEST(Generator, Deterministic) {
  InstanceGenerator a(5), b(5);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(a.randomCnf().clauses, b.randomCnf().clauses);
}

TEST(Generator, RespectsParams) {
  GeneratorParams p{2, 4, 3, 5, 2, 2};
  InstanceGenerator g(9, p);
  for (int i = 0; i < 100; ++i) {
    CnfFormula f = g.randomCnf();
    EXPECT_GE(f.numVars, 2u);
    EXPECT_LE(f.numVars, 4u);
    EXPECT_GE(f.size(), 3u);
    EXPECT_LE(f.size(), 5u);
    for (const Clause& c : f.clauses) EXPECT_EQ(c.size(), 2u);
  }
}

TEST(Generator, PlantedMus) {
  CnfFormula f = plantedMus(50, 4);
  EXPECT_EQ(f.size(), 50u);
  auto r = solve(ProblemKind::FMUS, test::instanceOf(f), test::internalFactory(), {Algorithm::Deletion, false});
  EXPECT_EQ(r.values.size(), 2u);
}

TEST(Generator, SideInputsSatisfyPreconditions) {
  // With F satisfiable the chosen side inputs always make the instance
  // well-posed.
  InstanceGenerator gen(77);
  int satisfiable = 0;
  for (int i = 0; i < 60; ++i) {
    CnfFormula f = gen.randomCnf();
    if (!test::bruteSat(f)) continue;
    ++satisfiable;
    for (ProblemKind k : {ProblemKind::FPIt, ProblemKind::FPIc, ProblemKind::FMnES,
                          ProblemKind::FMxES, ProblemKind::FBBr})
      EXPECT_FALSE(bruteSolve(k, gen.instanceFor(k, f)).illPosed) << kindName(k) << "\n" << writeDimacs(f);
  }
  EXPECT_GT(satisfiable, 10);
}

}  // namespace
}  // namespace msmp
