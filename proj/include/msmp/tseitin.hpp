// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "msmp/formula.hpp"

namespace msmp {

/// Hands out fresh variable ids above a fixed floor.
class VarAllocator {
 public:
  explicit VarAllocator(std::uint32_t used = 0) : used_(used) {}

  Var fresh() { return Var{++used_}; }
  std::uint32_t numVars() const { return used_; }
  /// Raises the floor so that ids up to `id` are never handed out.
  void reserve(std::uint32_t id) { used_ = std::max(used_, id); }

 private:
  std::uint32_t used_;
};

/// Plain-polarity Tseitin encoding: every internal node gets an auxiliary
/// variable tied to it by a full biconditional, so encoded literals may be
/// used under either polarity.
class TseitinEncoder {
 public:
  TseitinEncoder(VarAllocator& vars, std::vector<Clause>& sink) : vars_(vars), sink_(sink) {}

  /// A literal equivalent to `f` under the emitted definitions.
  Lit encode(const Formula& f);
  /// Emits clauses forcing `f` true, flattening top-level ∧ and ∨.
  void assertFormula(const Formula& f);
  /// A literal fixed true by a unit clause (allocated on first use).
  Lit trueLit();

  void emit(std::vector<Lit> lits);

  const std::vector<Var>& auxiliaries() const { return aux_; }

 private:
  Var freshAux();

  VarAllocator& vars_;
  std::vector<Clause>& sink_;
  std::vector<Var> aux_;
  std::optional<Lit> true_;
};

struct Clausification {
  CnfFormula cnf;
  std::vector<Var> auxiliaries;
};

/// Equisatisfiable CNF for `f`. Original ids are kept; auxiliaries are
/// allocated above max(numVars, maxVarId(f)).
Clausification clausify(const Formula& f, std::uint32_t numVars = 0);

}  // namespace msmp
