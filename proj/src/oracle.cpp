// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>

#include "msmp/error.hpp"
#include "msmp/oracle.hpp"

namespace msmp {

void Oracle::addClauses(std::span<const Clause> clauses) {
  for (const Clause& c : clauses) addClause(c);
}

void Oracle::addFormula(const CnfFormula& f) {
  reserveVars(f.numVars);
  addClauses(f.clauses);
}

SolveOutcome Oracle::solve(std::span<const Lit> assumptions) {
  ++calls_;
  return doSolve(assumptions);
}

OracleFactory makeOracleFactory(const OracleSpec& spec) {
  if (spec.backend == "internal") {
    SolverOptions opts = spec.options;
    return [opts] { return std::make_unique<CdclSolver>(opts); };
  }
  constexpr std::string_view prefix = "exec:";
  if (spec.backend.rfind(prefix, 0) == 0 && spec.backend.size() > prefix.size()) {
    std::string path = spec.backend.substr(prefix.size());
    return [path] { return std::make_unique<ExternalOracle>(path); };
  }
  throw UsageError("unknown solver backend '" + spec.backend +
                   "' (expected internal or exec:PATH)");
}

OracleSpec resolveOracleSpec(const std::string& cliValue) {
  OracleSpec spec;
  spec.backend = cliValue.empty() ? "internal" : cliValue;
  if (const char* env = std::getenv("MSMP_SOLVER"); env && *env) spec.backend = env;
  return spec;
}

}  // namespace msmp
