// SPDX-License-Identifier: Apache-2.0

// The SAT oracle contract: solve(F ∧ assumptions) returns (status, witness).
// Two backends share it: the embedded CDCL solver and a subprocess adapter
// for SAT-competition style executables.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "msmp/formula.hpp"

namespace msmp {

enum class SolveStatus { Sat, Unsat };

struct SolveOutcome {
  SolveStatus status = SolveStatus::Unsat;
  /// Present iff status is Sat; total over the session's variables.
  std::optional<Assignment> witness;

  bool sat() const { return status == SolveStatus::Sat; }
};

/// An incremental SAT session. Each solve() call is one oracle call.
class Oracle {
 public:
  virtual ~Oracle() = default;

  /// Makes variables 1..n known to the session.
  virtual void reserveVars(std::uint32_t n) = 0;
  virtual std::uint32_t numVars() const = 0;
  virtual void addClause(std::span<const Lit> lits) = 0;
  void addClause(const Clause& c) { addClause(std::span<const Lit>(c.lits())); }
  void addClauses(std::span<const Clause> clauses);
  void addFormula(const CnfFormula& f);

  /// Inconsistent assumptions give Unsat. Throws OracleError when the
  /// backend fails.
  SolveOutcome solve(std::span<const Lit> assumptions = {});

  std::uint64_t calls() const { return calls_; }

 protected:
  virtual SolveOutcome doSolve(std::span<const Lit> assumptions) = 0;

 private:
  std::uint64_t calls_ = 0;
};

struct SolverOptions {
  std::uint64_t seed = 0;
  /// Probability of a random decision. 0 keeps the search fully
  /// deterministic (ties broken by lowest variable id).
  double randomDecisionFreq = 0.0;
  std::uint32_t restartBase = 100;
};

/// CDCL: two watched literals, first-UIP learning with clause minimization,
/// VSIDS, phase saving, Luby restarts, assumptions as the first decisions.
class CdclSolver final : public Oracle {
 public:
  explicit CdclSolver(SolverOptions options = {});
  ~CdclSolver() override;
  CdclSolver(CdclSolver&&) noexcept;
  CdclSolver& operator=(CdclSolver&&) noexcept;

  void reserveVars(std::uint32_t n) override;
  std::uint32_t numVars() const override;
  void addClause(std::span<const Lit> lits) override;
  using Oracle::addClause;

  std::uint64_t conflicts() const;

 protected:
  SolveOutcome doSolve(std::span<const Lit> assumptions) override;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

/// Runs `executable <file.cnf>` per call. Assumptions become unit clauses in
/// the temporary copy. Expects "s SATISFIABLE|UNSATISFIABLE" and "v" lines.
class ExternalOracle final : public Oracle {
 public:
  explicit ExternalOracle(std::string executable);
  ~ExternalOracle() override;

  void reserveVars(std::uint32_t n) override;
  std::uint32_t numVars() const override { return numVars_; }
  void addClause(std::span<const Lit> lits) override;
  using Oracle::addClause;

  const std::string& executable() const { return executable_; }

 protected:
  SolveOutcome doSolve(std::span<const Lit> assumptions) override;

 private:
  std::string executable_;
  std::uint32_t numVars_ = 0;
  std::vector<std::vector<Lit>> clauses_;
};

/// "internal" or "exec:PATH".
struct OracleSpec {
  std::string backend = "internal";
  SolverOptions options;
};

using OracleFactory = std::function<std::unique_ptr<Oracle>()>;

OracleFactory makeOracleFactory(const OracleSpec& spec);
/// Spec from --solver, overridden by the MSMP_SOLVER environment variable.
OracleSpec resolveOracleSpec(const std::string& cliValue);

}  // namespace msmp
