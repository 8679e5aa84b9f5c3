// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "msmp/answer_io.hpp"
#include "msmp/error.hpp"
#include "msmp/parser.hpp"
#include "msmp/reductions.hpp"
#include "msmp/verifier.hpp"
#include "test_util.hpp"

namespace msmp {
namespace {

using V = std::vector<int>;

ProblemAnswer run(ProblemKind kind, const ProblemInstance& inst,
                  Algorithm alg = Algorithm::Progression) {
  ProblemAnswer a = solve(kind, inst, test::internalFactory(), {alg, false});
  EXPECT_EQ(certifyMinimal(kind, inst, a, test::internalFactory()), "") << kindName(kind);
  CheckResult c = checkAnswer(a, inst);
  EXPECT_TRUE(c.ok) << kindName(kind) << ": " << c.reason;
  return a;
}

Formula fml(const std::string& text) { return parseFormulaText(text).formula; }

ProblemInstance fromFormula(const std::string& text) {
  ParsedFormula p = parseFormulaText(text);
  ProblemInstance inst;
  inst.formula = p.formula;
  inst.numVars = p.numVars;
  return inst;
}

const CnfFormula kUnsatPair = test::cnf(2, {{1}, {-1}, {2}});

TEST(Reductions, MusOnUnsatPair) {
  ProblemAnswer a = run(ProblemKind::FMUS, test::instanceOf(kUnsatPair), Algorithm::Deletion);
  EXPECT_EQ(a.values, V({1, 2}));
  EXPECT_EQ(a.engine.predicateTests(), 3u);
  EXPECT_EQ(a.engine.wellPosedCalls, 1u);
  for (Algorithm alg : kAllAlgorithms)
    EXPECT_EQ(run(ProblemKind::FMUS, test::instanceOf(kUnsatPair), alg).values, V({1, 2}));
}

TEST(Reductions, McsAndMssOnUnsatPair) {
  // Forward deletion drops c1 first and keeps c2; insertion finds c1.
  EXPECT_EQ(run(ProblemKind::FMCS, test::instanceOf(kUnsatPair), Algorithm::Deletion).values, V({2}));
  EXPECT_EQ(run(ProblemKind::FMCS, test::instanceOf(kUnsatPair), Algorithm::Insertion).values, V({1}));
  EXPECT_EQ(run(ProblemKind::FMSS, test::instanceOf(kUnsatPair), Algorithm::Insertion).values, V({2, 3}));
  EXPECT_EQ(run(ProblemKind::FMSS, test::instanceOf(kUnsatPair), Algorithm::Deletion).values, V({1, 3}));
}

TEST(Reductions, McsRequiresUnsat) {
  auto inst = test::instanceOf(test::cnf(2, {{1, 2}}));
  EXPECT_THROW(solve(ProblemKind::FMCS, inst, test::internalFactory()), IllPosedError);
}

TEST(Reductions, MusOnSatisfiableIsIllPosed) {
  try {
    solve(ProblemKind::FMUS, test::instanceOf(test::cnf(1, {{1}})), test::internalFactory());
    FAIL();
  } catch (const IllPosedError& e) {
    EXPECT_NE(std::string(e.what()).find("FMUS requires F ⊨ ⊥"), std::string::npos) << e.what();
  }
}

TEST(Reductions, AssumeWellPosedSkipsCheck) {
  ProblemAnswer a =
      solve(ProblemKind::FMUS, test::instanceOf(kUnsatPair), test::internalFactory(), {Algorithm::Deletion, true});
  EXPECT_EQ(a.values, V({1, 2}));
  EXPECT_EQ(a.engine.wellPosedCalls, 0u);
  EXPECT_EQ(a.oracleCalls(), 3u);
}

TEST(Reductions, GroupMus) {
  LoadedInput in = parseInput("p gcnf 2 4 2\n{0} 2 0\n{1} 1 0\n{2} -1 0\n{0} -2 1 0\n");
  ProblemInstance inst;
  inst.formula = in.formula;
  inst.numVars = in.numVars;
  inst.groups = in.groups;
  EXPECT_EQ(run(ProblemKind::FMUS, inst).values, V({2}));
  // Hard part alone unsatisfiable: the empty group set.
  LoadedInput hard = parseInput("p gcnf 1 3 1\n{0} 1 0\n{0} -1 0\n{1} 1 0\n");
  inst.formula = hard.formula;
  inst.numVars = hard.numVars;
  inst.groups = hard.groups;
  EXPECT_EQ(run(ProblemKind::FMUS, inst).values, V({}));
  EXPECT_THROW(solve(ProblemKind::FMES, inst, test::internalFactory()), UsageError);
}

TEST(Reductions, Mes) {
  EXPECT_EQ(run(ProblemKind::FMES, test::instanceOf(test::cnf(2, {{1}, {1, 2}}))).values, V({1}));
}

TEST(Reductions, MdsAndMns) {
  auto inst = test::instanceOf(test::cnf(2, {{1}, {1, 2}}));
  // The only way to distinguish is to drop (x1).
  EXPECT_EQ(run(ProblemKind::FMDS, inst).values, V({1}));
  EXPECT_EQ(run(ProblemKind::FMNS, inst).values, V({2}));
}

TEST(Reductions, McfsAndMfs) {
  auto inst = test::instanceOf(test::cnf(1, {{1}, {-1}}));
  ProblemAnswer mcfs = run(ProblemKind::FMCFS, inst, Algorithm::Deletion);
  EXPECT_EQ(mcfs.values.size(), 1u);
  ProblemAnswer mfs = run(ProblemKind::FMFS, inst, Algorithm::Deletion);
  EXPECT_EQ(mfs.values.size(), 1u);
  EXPECT_NE(mfs.values, mcfs.values);
}

TEST(Reductions, MinimalAndMaximalModels) {
  auto inst = test::instanceOf(test::cnf(2, {{1, 2}}));
  EXPECT_EQ(run(ProblemKind::FMnM, inst, Algorithm::Insertion).values, V({1}));
  EXPECT_EQ(run(ProblemKind::FMnM, inst, Algorithm::Deletion).values, V({2}));
  EXPECT_EQ(run(ProblemKind::FMxM, inst).values, V({1, 2}));
  EXPECT_THROW(solve(ProblemKind::FMnM, test::instanceOf(kUnsatPair), test::internalFactory()), IllPosedError);
}

TEST(Reductions, PrimeImplicant) {
  ProblemInstance inst = fromFormula("(or x1 (and x1 x2))");
  inst.term = Term::make({1, 2});
  EXPECT_EQ(run(ProblemKind::FPIt, inst).values, V({1}));
  inst.term = Term::make({2});
  EXPECT_THROW(solve(ProblemKind::FPIt, inst, test::internalFactory()), IllPosedError);
}

TEST(Reductions, PrimeImplicate) {
  ProblemInstance inst = fromFormula("(and x1 (or x1 x2))");
  inst.clause = Clause::make({1, 2});
  EXPECT_EQ(run(ProblemKind::FPIc, inst).values, V({1}));
}

TEST(Reductions, LongestExtensionOfImplicate) {
  auto inst = test::instanceOf(test::cnf(2, {{1, 2}, {1}}));
  inst.unitIndex = 1;
  for (Algorithm alg : kAllAlgorithms) {
    ProblemAnswer a = run(ProblemKind::FLEIc, inst, alg);
    EXPECT_EQ(a.values, V({1, -2}));
    EXPECT_FALSE(a.degenerate);
  }
}

TEST(Reductions, LongestExtensionOfImplicant) {
  // F = ¬x1 ∨ (x1 ∧ x2). Both x2 and ¬x2 shrink the models of t1.
  ProblemInstance inst;
  DnfFormula f{2, {Term::make({-1}), Term::make({1, 2})}};
  inst.formula = f;
  inst.numVars = 2;
  inst.unitIndex = 0;
  ProblemAnswer a = run(ProblemKind::FLEIt, inst);
  EXPECT_FALSE(a.degenerate);
  EXPECT_EQ(a.values, V({-1}));
}

TEST(Reductions, LongestExtensionDegenerate) {
  // (x1) is covered by the other clause copy: G is unsatisfiable.
  auto inst = test::instanceOf(test::cnf(2, {{1}, {1}}));
  inst.unitIndex = 0;
  ProblemAnswer a = solve(ProblemKind::FLEIc, inst, test::internalFactory());
  EXPECT_TRUE(a.degenerate);
}

TEST(Reductions, EntailingAndEntailedSubsets) {
  auto j = test::instanceOf(test::cnf(2, {{1}, {2}, {1, 2}}));
  j.target = fml("(or x1 x2)");
  ProblemAnswer mnes = run(ProblemKind::FMnES, j, Algorithm::Deletion);
  EXPECT_EQ(mnes.values.size(), 1u);

  auto x = test::instanceOf(test::cnf(2, {{1}}));
  x.candidates = test::cnf(2, {{1}, {2}, {1, 2}});
  for (Algorithm alg : kAllAlgorithms) EXPECT_EQ(run(ProblemKind::FMxES, x, alg).values, V({1, 3}));
}

TEST(Reductions, Backbones) {
  auto inst = test::instanceOf(test::cnf(3, {{1}, {2, 3}}));
  for (Algorithm alg : kAllAlgorithms) EXPECT_EQ(run(ProblemKind::FBB, inst, alg).values, V({1}));
  auto withModel = inst;
  auto v = test::lits({1, 2, -3});
  withModel.model = Assignment::fromLiterals(3, v);
  for (Algorithm alg : kAllAlgorithms)
    EXPECT_EQ(run(ProblemKind::FBBr, withModel, alg).values, V({1}));
  // Without V one model is computed.
  EXPECT_EQ(run(ProblemKind::FBBr, inst).values, V({1}));
  auto neg = test::instanceOf(test::cnf(2, {{-1}, {-1, 2}}));
  EXPECT_EQ(run(ProblemKind::FBB, neg).values, V({-1}));
  auto bad = inst;
  auto nonModel = test::lits({-1, 2, 3});
  bad.model = Assignment::fromLiterals(3, nonModel);
  EXPECT_THROW(solve(ProblemKind::FBBr, bad, test::internalFactory()), IllPosedError);
}

TEST(Reductions, VariableIndependence) {
  ProblemInstance inst = fromFormula("(or (and x1 x2) (and x1 (not x2)))");
  for (Algorithm alg : kAllAlgorithms) EXPECT_EQ(run(ProblemKind::FVInd, inst, alg).values, V({2}));
}

TEST(Reductions, Autarky) {
  auto inst = test::instanceOf(test::cnf(3, {{1, 2}, {-1, 2}, {3}, {-3}}));
  for (Algorithm alg : kAllAlgorithms) {
    EXPECT_EQ(run(ProblemKind::FAutL, inst, alg).values, V({1, 2}));
    EXPECT_EQ(run(ProblemKind::FAutB, inst, alg).values, V({1, 2}));
  }
  EXPECT_THROW(solve(ProblemKind::FAutL, test::instanceOf(test::cnf(1, {{1}})), test::internalFactory()),
               IllPosedError);
}

TEST(Reductions, Optimization) {
  auto pairs = test::instanceOf(test::cnf(2, {{1}, {-1}, {2}, {-2}}));
  ProblemAnswer smcs = run(ProblemKind::FSMCS, pairs);
  EXPECT_EQ(smcs.optimum, 2);
  EXPECT_EQ(smcs.values.size(), 2u);

  auto sat = test::instanceOf(test::cnf(2, {{1, 2}}));
  EXPECT_EQ(run(ProblemKind::FSMCS, sat).optimum, 0);

  ProblemAnswer minsat = run(ProblemKind::FSMCFS, test::instanceOf(test::cnf(1, {{1}, {-1}})));
  EXPECT_EQ(minsat.optimum, 1);

  ProblemAnswer smnm = run(ProblemKind::FSMnM, test::instanceOf(test::cnf(3, {{1, 2}, {1, 3}})));
  EXPECT_EQ(smnm.optimum, 1);
  EXPECT_EQ(smnm.values, V({1}));

  ProblemAnswer smds = run(ProblemKind::FSMDS, test::instanceOf(test::cnf(2, {{1}, {1, 2}})));
  EXPECT_EQ(smds.optimum, 1);
}

TEST(Reductions, CliNames) {
  for (ProblemKind k : kAllProblemKinds) {
    auto back = kindFromCliName(kindCliName(k));
    ASSERT_TRUE(back);
    EXPECT_EQ(*back, k);
  }
  EXPECT_FALSE(kindFromCliName("nope"));
}

TEST(AnswerIo, PlainAndJson) {
  ProblemAnswer a = solve(ProblemKind::FMUS, test::instanceOf(kUnsatPair), test::internalFactory(),
                          {Algorithm::Deletion, false});
  EXPECT_EQ(writeAnswer(a, AnswerFormat::Plain), "v 1 2 0\n");
  std::string j = writeAnswer(a, AnswerFormat::Json, {1.5});
  EXPECT_EQ(j, "{\"problem\":\"FMUS\",\"answer\":[1,2],\"oracle_calls\":4,\"algorithm\":\"deletion\","
               "\"time_ms\":1.5}\n");
  ProblemAnswer bb;
  bb.kind = ProblemKind::FBB;
  bb.values = {1, -3};
  EXPECT_EQ(writeAnswer(bb, AnswerFormat::Plain), "v 1 -3 0\n");
  ProblemAnswer opt;
  opt.kind = ProblemKind::FSMCS;
  opt.optimum = 2;
  opt.values = {1, 3};
  EXPECT_EQ(writeAnswer(opt, AnswerFormat::Plain), "o 2\nv 1 3 0\n");
}

}  // namespace
}  // namespace msmp
