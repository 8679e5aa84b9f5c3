// SPDX-License-Identifier: Apache-2.0

// Function problems reduced to minimal-set extraction: predicate builders,
// answer decoders, and the solve() composition.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msmp/engine.hpp"
#include "msmp/formula.hpp"
#include "msmp/oracle.hpp"
#include "msmp/parser.hpp"

namespace msmp {

enum class ProblemKind {
  FMUS, FMCS, FMSS, FMES, FMDS, FMNS, FMCFS, FMFS, FMnM, FMxM, FPIt, FPIc, FLEIt,
  FLEIc, FMnES, FMxES, FBBr, FBB, FVInd, FAutL, FAutB, FSMCS, FSMDS, FSMCFS, FSMnM
};

inline constexpr ProblemKind kAllProblemKinds[] = {
    ProblemKind::FMUS,  ProblemKind::FMCS,   ProblemKind::FMSS,  ProblemKind::FMES,
    ProblemKind::FMDS,  ProblemKind::FMNS,   ProblemKind::FMCFS, ProblemKind::FMFS,
    ProblemKind::FMnM,  ProblemKind::FMxM,   ProblemKind::FPIt,  ProblemKind::FPIc,
    ProblemKind::FLEIt, ProblemKind::FLEIc,  ProblemKind::FMnES, ProblemKind::FMxES,
    ProblemKind::FBBr,  ProblemKind::FBB,    ProblemKind::FVInd, ProblemKind::FAutL,
    ProblemKind::FAutB, ProblemKind::FSMCS,  ProblemKind::FSMDS, ProblemKind::FSMCFS,
    ProblemKind::FSMnM};

/// "FMUS", "FBBr", ...
std::string_view kindName(ProblemKind k);
/// CLI name: "mus", "backbone", ...
std::string_view kindCliName(ProblemKind k);
std::optional<ProblemKind> kindFromCliName(std::string_view name);
bool isOptimizationKind(ProblemKind k);
/// True when the payload is a literal set (term or clause) rather than
/// clause indices or variable ids.
bool hasLiteralPayload(ProblemKind k);

struct ProblemInstance {
  MainFormula formula = CnfFormula{};
  /// Universe X = 1..numVars.
  std::uint32_t numVars = 0;
  /// FMUS/FMCS/FMSS: group 0 is hard, groups 1..k are the elements.
  std::optional<ClauseGroups> groups;
  std::optional<Term> term;            // FPIt
  std::optional<Clause> clause;        // FPIc
  std::optional<std::size_t> unitIndex;  // FLEIt/FLEIc, 0-based
  std::optional<Formula> target;       // FMnES: I
  std::optional<CnfFormula> candidates;  // FMxES: N
  std::optional<Assignment> model;     // FBBr: V
};

/// Problem-level options.
struct SolveOptions {
  Algorithm algorithm = Algorithm::Progression;
  bool assumeWellPosed = false;
};

struct ProblemAnswer {
  ProblemKind kind = ProblemKind::FMUS;
  /// Sorted. Clause/group indices are 1-based; variable sets hold ids;
  /// literal payloads hold DIMACS literals ordered by variable.
  std::vector<int> values;
  /// Optimization kinds: the optimum value.
  std::optional<std::int64_t> optimum;
  /// Set for the degenerate FLEIt/FLEIc case (the reference unit is already
  /// covered by the rest of the formula).
  bool degenerate = false;
  /// FBBr: the reference model V actually used (given or computed).
  std::optional<Assignment> referenceModel;
  MinimalSetResult engine;
  /// Precondition and decode calls outside the extraction.
  std::uint64_t extraCalls = 0;

  std::uint64_t oracleCalls() const { return engine.oracleCalls + extraCalls; }
};

/// The SAT-backed predicate of a problem together with what the decoder needs.
struct BuiltPredicate {
  PredicateSpec spec;
  std::string illPosedMessage;
  /// FSM* kinds: selector variables p_i.
  std::vector<Lit> selectors;
  /// FLEIt/FLEIc: the reference literal list.
  std::vector<Lit> referenceLits;
};

/// Builds the predicate. Does not check preconditions.
BuiltPredicate buildPredicate(ProblemKind kind, const ProblemInstance& inst);

/// Precondition checks that are not P(R). Returns the number of oracle
/// calls made and, for FBB/FBBr, a model of F. Throws IllPosedError.
struct PreconditionResult {
  std::uint64_t calls = 0;
  std::optional<Assignment> model;
};
PreconditionResult checkPreconditions(ProblemKind kind, const ProblemInstance& inst,
                                      const OracleFactory& factory, bool assumeWellPosed);

ProblemAnswer decodeAnswer(ProblemKind kind, const ProblemInstance& inst,
                           const BuiltPredicate& built, const MinimalSetResult& result,
                           const PreconditionResult& pre);

ProblemAnswer solve(ProblemKind kind, const ProblemInstance& inst, const OracleFactory& factory,
                    const SolveOptions& options = {});

/// Re-tests P(M) and every P(M \ {e}) on a fresh session. Returns an empty
/// string on success, otherwise the reason.
std::string certifyMinimal(ProblemKind kind, const ProblemInstance& inst,
                           const ProblemAnswer& answer, const OracleFactory& factory);

/// The CNF view of the main formula; throws UsageError for other payloads.
const CnfFormula& requireCnf(const ProblemInstance& inst, ProblemKind kind);
/// The main formula as an AST.
Formula mainFormula(const ProblemInstance& inst);

}  // namespace msmp
