// SPDX-License-Identifier: Apache-2.0

#include "msmp/generator.hpp"

#include <algorithm>
#include <numeric>

#include "msmp/error.hpp"
#include "msmp/verifier.hpp"

namespace msmp {

namespace {

using K = ProblemKind;

bool takesDnf(ProblemKind k) { return k == K::FLEIt; }

}  // namespace

InstanceGenerator::InstanceGenerator(std::uint64_t seed, GeneratorParams params)
    : rng_(seed), params_(params) {
  if (params_.minVars == 0 || params_.minVars > params_.maxVars || params_.minClauseLen == 0 ||
      params_.minClauseLen > params_.maxClauseLen || params_.minClauses > params_.maxClauses)
    throw UsageError("inconsistent generator parameters");
}

Clause InstanceGenerator::randomClause(std::uint32_t numVars) {
  std::size_t hi = std::min<std::size_t>(params_.maxClauseLen, numVars);
  std::size_t lo = std::min(params_.minClauseLen, hi);
  std::size_t len = lo + below(hi - lo + 1);
  std::vector<std::uint32_t> vars(numVars);
  std::iota(vars.begin(), vars.end(), 1u);
  std::vector<Lit> lits;
  for (std::size_t i = 0; i < len; ++i) {
    std::size_t j = i + below(vars.size() - i);
    std::swap(vars[i], vars[j]);
    lits.push_back(Lit(Var{vars[i]}, below(2) == 1));
  }
  return Clause::make(lits);
}

CnfFormula InstanceGenerator::randomCnf(std::uint32_t numVars, std::size_t numClauses) {
  CnfFormula f;
  f.numVars = numVars;
  for (std::size_t i = 0; i < numClauses; ++i) f.clauses.push_back(randomClause(numVars));
  return f;
}

CnfFormula InstanceGenerator::randomCnf() {
  auto n = static_cast<std::uint32_t>(params_.minVars + below(params_.maxVars - params_.minVars + 1));
  std::size_t m = params_.minClauses + below(params_.maxClauses - params_.minClauses + 1);
  return randomCnf(n, m);
}

DnfFormula InstanceGenerator::randomDnf() {
  CnfFormula c = randomCnf();
  DnfFormula d;
  d.numVars = c.numVars;
  for (const Clause& cl : c.clauses) d.terms.push_back(Term::make(cl.lits()));
  return d;
}

Formula InstanceGenerator::randomFormula(std::uint32_t numVars, int depth) {
  if (depth <= 0 || below(4) == 0) {
    Var v{static_cast<std::uint32_t>(1 + below(numVars))};
    return Formula::literal(Lit(v, below(2) == 1));
  }
  switch (below(3)) {
    case 0: return Formula::makeNot(randomFormula(numVars, depth - 1));
    case 1: {
      std::vector<Formula> kids;
      std::size_t k = 2 + below(2);
      for (std::size_t i = 0; i < k; ++i) kids.push_back(randomFormula(numVars, depth - 1));
      return Formula::makeAnd(std::move(kids));
    }
    default: {
      std::vector<Formula> kids;
      std::size_t k = 2 + below(2);
      for (std::size_t i = 0; i < k; ++i) kids.push_back(randomFormula(numVars, depth - 1));
      return Formula::makeOr(std::move(kids));
    }
  }
}

ProblemInstance InstanceGenerator::instanceFor(ProblemKind kind) {
  if (takesDnf(kind)) {
    DnfFormula d = randomDnf();
    ProblemInstance inst;
    inst.numVars = d.numVars;
    inst.unitIndex = below(d.terms.size());
    inst.formula = std::move(d);
    return inst;
  }
  return instanceFor(kind, randomCnf());
}

ProblemInstance InstanceGenerator::instanceFor(ProblemKind kind, const CnfFormula& cnf) {
  ProblemInstance inst;
  inst.numVars = cnf.numVars;
  if (takesDnf(kind)) {
    DnfFormula d;
    d.numVars = cnf.numVars;
    for (const Clause& c : cnf.clauses) d.terms.push_back(Term::make(c.lits()));
    inst.unitIndex = below(d.terms.size());
    inst.formula = std::move(d);
    return inst;
  }
  inst.formula = cnf;
  const std::uint32_t n = cnf.numVars;
  Formula f = fromCnf(cnf);
  std::vector<Assignment> models = enumerateModels(f, n);

  auto randomAssignment = [&] {
    Assignment a(n);
    for (std::uint32_t v = 1; v <= n; ++v) a.assign(Var{v}, below(2) == 1);
    return a;
  };
  auto randomNonModel = [&]() -> Assignment {
    // Non-models by rejection; fall back to any assignment for valid F.
    for (int tries = 0; tries < 64; ++tries) {
      Assignment a = randomAssignment();
      if (!evaluate(f, a)) return a;
    }
    return randomAssignment();
  };

  switch (kind) {
    case K::FPIt: {
      Assignment a = models.empty() ? randomAssignment() : models[below(models.size())];
      inst.term = Term::make(a.literals());
      break;
    }
    case K::FPIc: {
      std::vector<Lit> lits;
      for (Lit l : randomNonModel().literals()) lits.push_back(~l);
      inst.clause = Clause::make(lits);
      break;
    }
    case K::FLEIc:
      inst.unitIndex = below(cnf.clauses.size());
      break;
    case K::FMnES: {
      // I: a random subset of J, sometimes with an entailed clause added.
      std::vector<Formula> parts;
      for (const Clause& c : cnf.clauses)
        if (below(2) == 0) parts.push_back(fromClause(c));
      if (below(2) == 0) {
        Assignment a = randomNonModel();
        if (!evaluate(f, a)) {
          std::vector<Lit> lits;
          for (Lit l : a.literals()) lits.push_back(~l);
          parts.push_back(fromClause(Clause::make(lits)));
        }
      }
      inst.target = parts.empty() ? Formula::constant(true) : Formula::makeAnd(parts);
      break;
    }
    case K::FMxES: {
      CnfFormula cands;
      cands.numVars = n;
      std::size_t k = 1 + below(6);
      for (std::size_t i = 0; i < k; ++i) {
        if (below(3) == 0 && !cnf.clauses.empty())
          cands.clauses.push_back(cnf.clauses[below(cnf.clauses.size())]);
        else
          cands.clauses.push_back(randomClause(n));
      }
      inst.candidates = std::move(cands);
      break;
    }
    case K::FBBr:
      if (!models.empty()) inst.model = models[below(models.size())];
      break;
    default:
      break;
  }
  return inst;
}

CnfFormula plantedMus(std::size_t size, std::uint64_t seed) {
  if (size < 2) throw UsageError("a planted MUS instance needs at least two clauses");
  std::mt19937_64 rng(seed);
  CnfFormula f;
  // Fillers are positive clauses over x2..: jointly satisfiable and
  // unable to help refute x1.
  const std::uint32_t fillerVars = 8;
  f.numVars = 1 + fillerVars;
  for (std::size_t i = 0; i + 2 < size; ++i) {
    std::size_t len = 1 + rng() % 3;
    std::vector<Lit> lits;
    for (std::size_t j = 0; j < len; ++j)
      lits.push_back(Lit::positive(Var{static_cast<std::uint32_t>(2 + rng() % fillerVars)}));
    f.clauses.push_back(Clause::make(lits));
  }
  std::size_t p = rng() % (f.clauses.size() + 1);
  f.clauses.insert(f.clauses.begin() + static_cast<std::ptrdiff_t>(p), Clause::make({1}));
  std::size_t q = rng() % (f.clauses.size() + 1);
  f.clauses.insert(f.clauses.begin() + static_cast<std::ptrdiff_t>(q), Clause::make({-1}));
  return f;
}

}  // namespace msmp
