// SPDX-License-Identifier: Apache-2.0

// Brute-force oracles for small instances. Everything here is computed by
// enumerating assignments and subsets straight from the problem
// definitions, without the SAT oracle.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msmp/engine.hpp"
#include "msmp/formula.hpp"
#include "msmp/reductions.hpp"

namespace msmp {

struct BruteForceBudget {
  std::uint32_t maxVars = 12;
  std::size_t maxElements = 14;
  std::uint64_t maxSubsets = std::uint64_t{1} << 22;
};

/// Satisfying total assignments over x1..x_numVars, sorted
/// lexicographically (x1 first, false before true).
std::vector<Assignment> enumerateModels(const Formula& f, std::uint32_t numVars,
                                        const BruteForceBudget& budget = {});

struct MonotonicityReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
  /// W0 ⊆ W1 with P(W0) true and P(W1) false.
  std::optional<std::pair<ElementSet, ElementSet>> counterexample;
  /// Distinct subsets actually tested (results are memoized).
  std::size_t distinctTests = 0;
};

/// Samples chains W0 ⊆ W1 ⊆ R uniformly and counts P(W0) ∧ ¬P(W1).
MonotonicityReport checkMonotone(MonotonePredicate& p, std::size_t samples, std::uint64_t seed,
                                 const BruteForceBudget& budget = {});

/// P(W) = |W| is odd. Not monotone.
class ParityPredicate final : public MonotonePredicate {
 public:
  explicit ParityPredicate(std::size_t n) : n_(n) {}
  std::size_t size() const override { return n_; }
  Form form() const override { return Form::P; }
  TestOutcome test(const ElementSet& w) override { return {w.size() % 2 == 1, std::nullopt}; }

 private:
  std::size_t n_;
};

/// Empty string when P(M) holds and no strict subset of M does (every
/// subset is tested). Otherwise the reason.
std::string checkSubsetMinimal(MonotonePredicate& p, const ElementSet& m,
                               const BruteForceBudget& budget = {});

struct BruteResult {
  /// The kind's precondition fails on this instance.
  bool illPosed = false;
  /// Every valid answer, encoded like ProblemAnswer::values, ordered by
  /// (size, lexicographic).
  std::vector<std::vector<int>> answers;
  std::optional<std::int64_t> optimum;
};

BruteResult bruteSolve(ProblemKind kind, const ProblemInstance& inst,
                       const BruteForceBudget& budget = {});

struct CheckResult {
  bool ok = false;
  std::string reason;
};

CheckResult checkAnswer(const ProblemAnswer& answer, const BruteResult& expected);
CheckResult checkAnswer(const ProblemAnswer& answer, const ProblemInstance& inst,
                        const BruteForceBudget& budget = {});

/// Every set of `a` intersects every set of `b`.
bool allIntersect(const std::vector<std::vector<int>>& a, const std::vector<std::vector<int>>& b);

/// "ok N - description" / "not ok N - description".
std::string tapLine(std::size_t number, bool ok, const std::string& description);

}  // namespace msmp
