// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "msmp/error.hpp"
#include "msmp/generator.hpp"
#include "msmp/parser.hpp"
#include "test_util.hpp"

namespace msmp {
namespace {

TEST(Dimacs, ParsesClausesAcrossLines) {
  CnfFormula f = parseDimacs("c comment\np cnf 3 2\n1 -2\n 0 3 0\n");
  EXPECT_EQ(f.numVars, 3u);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.clauses[0], Clause::make({1, -2}));
  EXPECT_EQ(f.clauses[1], Clause::make({3}));
}

TEST(Dimacs, EmptyClauseAllowed) {
  CnfFormula f = parseDimacs("p cnf 1 1\n0\n");
  ASSERT_EQ(f.size(), 1u);
  EXPECT_TRUE(f.clauses[0].empty());
}

void expectParseErrorAt(std::string_view text, std::size_t line) {
  try {
    parseDimacs(text);
    FAIL() << "no error for: " << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
  }
}

TEST(Dimacs, ErrorsCarryLineNumbers) {
  expectParseErrorAt("p cnf 2 1\n1 3 0\n", 2);
  expectParseErrorAt("p cnf 2 1\n1 x 0\n", 2);
  expectParseErrorAt("1 2 0\np cnf 2 1\n", 1);
  expectParseErrorAt("p cnf 2 1\n1 -1 0\n", 2);
  EXPECT_THROW(parseDimacs("p cnf 2 2\n1 0\n"), ParseError);
  EXPECT_THROW(parseDimacs("p cnf 2 1\n1 2\n"), ParseError);
  EXPECT_THROW(parseDimacs(""), ParseError);
}

TEST(Dimacs, WriteRoundTrip) {
  InstanceGenerator gen(3);
  for (int i = 0; i < 50; ++i) {
    CnfFormula f = gen.randomCnf();
    CnfFormula g = parseDimacs(writeDimacs(f));
    EXPECT_EQ(g.numVars, f.numVars);
    EXPECT_EQ(g.clauses, f.clauses);
  }
}

TEST(Dnf, Parses) {
  DnfFormula f = parseDnf("p dnf 2 2\n1 2 0\n-1 0\n");
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.terms[1], Term::make({-1}));
  EXPECT_EQ(parseDnf(writeDnf(f)).terms, f.terms);
}

TEST(Gcnf, GroupsAndRoundTrip) {
  GroupedCnf g = parseGcnf("p gcnf 2 3 2\n{0} 1 0\n{1} -1 0\n{2} 2 0\n");
  EXPECT_EQ(g.groups.numGroups, 2u);
  ASSERT_EQ(g.groups.groupOf.size(), 3u);
  EXPECT_EQ(g.groups.groupOf[0], 0u);
  EXPECT_EQ(g.groups.groupOf[2], 2u);
  GroupedCnf h = parseGcnf(writeGcnf(g));
  EXPECT_EQ(h.cnf.clauses, g.cnf.clauses);
  EXPECT_EQ(h.groups.groupOf, g.groups.groupOf);
  EXPECT_THROW(parseGcnf("p gcnf 2 1 1\n{3} 1 0\n"), ParseError);
}

TEST(Wcnf, HardAndSoft) {
  GroupedCnf g = parseWcnf("p wcnf 2 2 10\n10 1 0\n1 -1 2 0\n");
  EXPECT_EQ(g.groups.groupOf[0], 0u);
  EXPECT_EQ(g.groups.groupOf[1], 1u);
  EXPECT_THROW(parseWcnf("p wcnf 2 1 10\n3 1 0\n"), ParseError);
}

TEST(FormulaText, NumberedAndNamedVariables) {
  ParsedFormula p = parseFormulaText("(or (and x1 x2) (not flag))");
  EXPECT_EQ(p.numVars, 3u);
  EXPECT_EQ(p.names[3], "flag");
  auto a = test::lits({1, 2, 3});
  EXPECT_TRUE(evaluate(p.formula, Assignment::fromLiterals(3, a)));
  auto b = test::lits({1, -2, 3});
  EXPECT_FALSE(evaluate(p.formula, Assignment::fromLiterals(3, b)));
}

TEST(FormulaText, ErrorsCarryPosition) {
  try {
    parseFormulaText("(and x1\n  (frob x2))");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 4u);
  }
  EXPECT_THROW(parseFormulaText("(not x1 x2)"), ParseError);
  EXPECT_THROW(parseFormulaText("(and x1 x2"), ParseError);
  EXPECT_THROW(parseFormulaText(""), ParseError);
}

TEST(ModelLines, Parse) {
  auto m = parseModelLines("s SATISFIABLE\nv 1 -2\nv 3 0\n");
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[1].toDimacs(), -2);
  auto l = parseLiteralList("1,-3 2 0");
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[2].toDimacs(), 2);
  EXPECT_THROW(parseLiteralList("1 0 2"), ParseError);
}

TEST(AutoDetect, PicksFormat) {
  EXPECT_TRUE(std::holds_alternative<CnfFormula>(parseInput("p cnf 1 1\n1 0\n").formula));
  EXPECT_TRUE(std::holds_alternative<DnfFormula>(parseInput("p dnf 1 1\n1 0\n").formula));
  LoadedInput g = parseInput("c x\np gcnf 1 1 1\n{1} 1 0\n");
  EXPECT_TRUE(g.groups.has_value());
  EXPECT_TRUE(std::holds_alternative<Formula>(parseInput("(or x1 x2)").formula));
  EXPECT_EQ(parseInput("(or x1 x2)").numVars, 2u);
  EXPECT_THROW(parseInput("hello"), ParseError);
  EXPECT_THROW(parseFormatName("yaml"), UsageError);
}

}  // namespace
}  // namespace msmp
