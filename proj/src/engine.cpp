// SPDX-License-Identifier: Apache-2.0

#include "msmp/engine.hpp"

#include <algorithm>

#include "msmp/error.hpp"

namespace msmp {

std::string_view formName(Form f) {
  switch (f) {
    case Form::L: return "L";
    case Form::P: return "P";
    case Form::B: return "B";
  }
  return "?";
}

std::string_view algorithmName(Algorithm a) {
  switch (a) {
    case Algorithm::Deletion: return "deletion";
    case Algorithm::Insertion: return "insertion";
    case Algorithm::Dichotomic: return "dichotomic";
    case Algorithm::QuickXplain: return "quickxplain";
    case Algorithm::Progression: return "progression";
  }
  return "?";
}

Algorithm parseAlgorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms)
    if (algorithmName(a) == name) return a;
  if (name == "qx") return Algorithm::QuickXplain;
  throw UsageError("unknown algorithm '" + std::string(name) +
                   "' (expected deletion, insertion, dichotomic, quickxplain or progression)");
}

// --- PredicateBuilder ---------------------------------------------------------

PredicateBuilder::PredicateBuilder(Form form, std::uint32_t numVars)
    : vars_(numVars), encoder_(vars_, clauses_) {
  spec_.form = form;
}

void PredicateBuilder::addBase(const Clause& c) { clauses_.push_back(c); }

void PredicateBuilder::addBase(const CnfFormula& f) {
  vars_.reserve(f.numVars);
  for (const Clause& c : f.clauses) clauses_.push_back(c);
}

void PredicateBuilder::addBase(const Formula& f) {
  vars_.reserve(maxVarId(f));
  encoder_.assertFormula(f);
}

void PredicateBuilder::addElement(Lit sigma) {
  vars_.reserve(sigma.var().id);
  spec_.elements.push_back(sigma);
}

void PredicateBuilder::addElement(const Formula& f) {
  vars_.reserve(maxVarId(f));
  if (f.isLiteral()) {
    spec_.elements.push_back(f.asLiteral());
  } else {
    spec_.elements.push_back(encoder_.encode(f));
  }
}

void PredicateBuilder::addSelectorElement(std::span<const Clause> clauses) {
  for (const Clause& c : clauses)
    for (Lit l : c) vars_.reserve(l.var().id);
  Lit s = Lit::positive(vars_.fresh());
  for (const Clause& c : clauses) {
    std::vector<Lit> lits{~s};
    lits.insert(lits.end(), c.begin(), c.end());
    encoder_.emit(std::move(lits));
  }
  spec_.elements.push_back(s);
}

PredicateSpec PredicateBuilder::finish() {
  spec_.base.numVars = vars_.numVars();
  spec_.base.clauses = clauses_;
  return spec_;
}

// --- SatPredicate ---------------------------------------------------------------

SatPredicate::SatPredicate(PredicateSpec spec, const OracleFactory& factory)
    : spec_(std::move(spec)), oracle_(factory()), nextVar_(spec_.base.numVars) {
  for (Lit l : spec_.elements) nextVar_ = std::max(nextVar_, l.var().id);
  oracle_->reserveVars(nextVar_);
  oracle_->addClauses(spec_.base.clauses);
}

Lit SatPredicate::activate(const std::vector<Lit>& lits) {
  Lit a = Lit::positive(Var{++nextVar_});
  oracle_->reserveVars(nextVar_);
  std::vector<Lit> clause{~a};
  clause.insert(clause.end(), lits.begin(), lits.end());
  oracle_->addClause(std::span<const Lit>(clause));
  return a;
}

TestOutcome SatPredicate::test(const ElementSet& w) {
  const std::size_t n = spec_.elements.size();
  std::vector<bool> in(n, false);
  for (std::size_t i : w) {
    if (i >= n) throw UsageError("element index out of range");
    in[i] = true;
  }

  std::vector<Lit> assumptions;
  std::optional<Lit> act;
  switch (spec_.form) {
    case Form::L: {
      if (spec_.nested) {
        for (std::size_t i = n; i-- > 0;) {
          if (!in[i]) {
            assumptions.push_back(spec_.elements[i]);
            break;
          }
        }
      } else {
        for (std::size_t i = 0; i < n; ++i)
          if (!in[i]) assumptions.push_back(spec_.elements[i]);
      }
      if (spec_.complementDisjunction) {
        std::vector<Lit> dis;
        for (std::size_t i = 0; i < n; ++i)
          if (in[i]) dis.push_back(~spec_.elements[i]);
        act = activate(dis);
      }
      break;
    }
    case Form::P: {
      for (std::size_t i = 0; i < n; ++i)
        if (in[i]) assumptions.push_back(spec_.elements[i]);
      if (spec_.complementDisjunction) {
        std::vector<Lit> dis;
        for (std::size_t i = 0; i < n; ++i)
          if (!in[i]) dis.push_back(~spec_.elements[i]);
        act = activate(dis);
      }
      break;
    }
    case Form::B: {
      std::vector<Lit> dis;
      for (std::size_t i = 0; i < n; ++i)
        if (!in[i]) dis.push_back(spec_.elements[i]);
      act = activate(dis);
      break;
    }
  }
  if (act) assumptions.push_back(*act);

  SolveOutcome out = oracle_->solve(assumptions);
  if (act) oracle_->addClause(std::vector<Lit>{~*act});

  TestOutcome result;
  result.holds = spec_.form == Form::L ? out.sat() : !out.sat();
  result.witness = std::move(out.witness);
  return result;
}

// --- PermutedPredicate ------------------------------------------------------------

PermutedPredicate::PermutedPredicate(MonotonePredicate& inner, std::vector<std::size_t> order)
    : inner_(inner), order_(std::move(order)) {
  if (order_.size() != inner_.size()) throw UsageError("permutation size mismatch");
  std::vector<std::size_t> check = order_;
  std::sort(check.begin(), check.end());
  for (std::size_t i = 0; i < check.size(); ++i)
    if (check[i] != i) throw UsageError("not a permutation");
}

ElementSet PermutedPredicate::toInner(const ElementSet& w) const {
  ElementSet out;
  out.reserve(w.size());
  for (std::size_t i : w) out.push_back(order_.at(i));
  std::sort(out.begin(), out.end());
  return out;
}

TestOutcome PermutedPredicate::test(const ElementSet& w) { return inner_.test(toInner(w)); }

}  // namespace msmp
