// SPDX-License-Identifier: Apache-2.0

// Seeded random instances. Draws use `rng() % k` on a 64-bit Mersenne
// twister so streams are identical across platforms and standard libraries.

#pragma once

#include <cstdint>
#include <random>

#include "msmp/formula.hpp"
#include "msmp/reductions.hpp"

namespace msmp {

struct GeneratorParams {
  std::uint32_t minVars = 1;
  std::uint32_t maxVars = 6;
  std::size_t minClauses = 1;
  std::size_t maxClauses = 10;
  std::size_t minClauseLen = 1;
  std::size_t maxClauseLen = 3;
};

class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed, GeneratorParams params = {});

  std::uint64_t below(std::uint64_t k) { return k == 0 ? 0 : rng_() % k; }

  Clause randomClause(std::uint32_t numVars);
  CnfFormula randomCnf();
  CnfFormula randomCnf(std::uint32_t numVars, std::size_t numClauses);
  DnfFormula randomDnf();
  /// Random AST over x1..x_numVars with the given nesting depth.
  Formula randomFormula(std::uint32_t numVars, int depth);

  /// An instance of `kind` over a fresh random formula, with side inputs
  /// chosen to satisfy the kind's precondition when the formula allows it
  /// (found by enumeration).
  ProblemInstance instanceFor(ProblemKind kind);
  /// Same, reusing `cnf` as the main formula where the kind takes a CNF.
  ProblemInstance instanceFor(ProblemKind kind, const CnfFormula& cnf);

  const GeneratorParams& params() const { return params_; }

 private:
  std::mt19937_64 rng_;
  GeneratorParams params_;
};

/// FMUS instance with `size` clauses whose only MUS is {(x1), (¬x1)},
/// placed at random positions among satisfiable filler clauses.
CnfFormula plantedMus(std::size_t size, std::uint64_t seed);

}  // namespace msmp
