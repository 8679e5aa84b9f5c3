// SPDX-License-Identifier: Apache-2.0

#include "msmp/formula.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "msmp/error.hpp"

namespace msmp {

Lit Lit::fromDimacs(int value) {
  if (value == 0) throw UsageError("literal 0 is not a valid DIMACS literal");
  return Lit(Var{static_cast<std::uint32_t>(std::abs(value))}, value < 0);
}

int Lit::toDimacs() const {
  int v = static_cast<int>(var().id);
  return isNegative() ? -v : v;
}

//===----------------------------------------------------------------------===//
// LiteralSet
//===----------------------------------------------------------------------===//

template <UnitKind K>
std::optional<LiteralSet<K>> LiteralSet<K>::tryMake(std::span<const Lit> lits) {
  LiteralSet out;
  out.lits_.reserve(lits.size());
  for (Lit l : lits) {
    if (l.var().id == 0) throw UsageError("variable id 0 in literal set");
    if (std::find(out.lits_.begin(), out.lits_.end(), ~l) != out.lits_.end())
      return std::nullopt;
    if (std::find(out.lits_.begin(), out.lits_.end(), l) == out.lits_.end())
      out.lits_.push_back(l);
  }
  return out;
}

template <UnitKind K>
LiteralSet<K> LiteralSet<K>::make(std::span<const Lit> lits) {
  auto made = tryMake(lits);
  if (!made) {
    throw UsageError(K == UnitKind::Clause ? "tautologous clause"
                                           : "contradictory term");
  }
  return *std::move(made);
}

template <UnitKind K>
LiteralSet<K> LiteralSet<K>::make(std::initializer_list<int> dimacs) {
  std::vector<Lit> lits;
  for (int d : dimacs) lits.push_back(Lit::fromDimacs(d));
  return make(lits);
}

template <UnitKind K>
bool LiteralSet<K>::contains(Lit l) const {
  return std::find(lits_.begin(), lits_.end(), l) != lits_.end();
}

template <UnitKind K>
bool LiteralSet<K>::mentions(Var v) const {
  return std::any_of(lits_.begin(), lits_.end(),
                     [v](Lit l) { return l.var() == v; });
}

template class LiteralSet<UnitKind::Clause>;
template class LiteralSet<UnitKind::Term>;

//===----------------------------------------------------------------------===//
// Assignment
//===----------------------------------------------------------------------===//

Assignment Assignment::fromLiterals(std::uint32_t numVars, std::span<const Lit> lits) {
  Assignment a(numVars);
  for (Lit l : lits) a.set(l);
  return a;
}

void Assignment::set(Lit l) {
  std::uint32_t v = l.var().id;
  if (v == 0 || v >= values_.size())
    throw UsageError("literal " + std::to_string(l.toDimacs()) +
                     " outside the assignment universe");
  std::int8_t want = l.isNegative() ? -1 : 1;
  if (values_[v] == -want)
    throw UsageError("inconsistent assignment on variable " + std::to_string(v));
  values_[v] = want;
}

std::optional<bool> Assignment::value(Var v) const {
  if (v.id == 0 || v.id >= values_.size() || values_[v.id] == 0) return std::nullopt;
  return values_[v.id] > 0;
}

bool Assignment::isTrue(Lit l) const {
  auto v = value(l.var());
  return v && (*v != l.isNegative());
}

bool Assignment::isTotal() const {
  return std::all_of(values_.begin() + (values_.empty() ? 0 : 1), values_.end(),
                     [](std::int8_t x) { return x != 0; });
}

std::vector<Lit> Assignment::literals() const {
  std::vector<Lit> out;
  for (std::uint32_t v = 1; v < values_.size(); ++v)
    if (values_[v] != 0) out.emplace_back(Var{v}, values_[v] < 0);
  return out;
}

std::vector<Var> Assignment::trueVars() const {
  std::vector<Var> out;
  for (std::uint32_t v = 1; v < values_.size(); ++v)
    if (values_[v] > 0) out.push_back(Var{v});
  return out;
}

Assignment Assignment::complemented() const {
  Assignment out = *this;
  for (auto& x : out.values_) x = static_cast<std::int8_t>(-x);
  return out;
}

bool satisfies(const Assignment& a, const Clause& c) {
  return std::any_of(c.begin(), c.end(), [&](Lit l) { return a.isTrue(l); });
}

bool satisfies(const Assignment& a, const Term& t) {
  return std::all_of(t.begin(), t.end(), [&](Lit l) { return a.isTrue(l); });
}

bool satisfies(const Assignment& a, const CnfFormula& f) {
  return std::all_of(f.clauses.begin(), f.clauses.end(),
                     [&](const Clause& c) { return satisfies(a, c); });
}

bool satisfies(const Assignment& a, const DnfFormula& f) {
  return std::any_of(f.terms.begin(), f.terms.end(),
                     [&](const Term& t) { return satisfies(a, t); });
}

//===----------------------------------------------------------------------===//
// Formula
//===----------------------------------------------------------------------===//

struct Formula::Node {
  Kind kind = Kind::Constant;
  bool value = true;
  Var var;
  std::vector<Formula> children;
};

Formula::Formula() : Formula(constant(true)) {}

Formula Formula::constant(bool value) {
  static const auto trueNode = std::make_shared<const Node>(Node{Kind::Constant, true, {}, {}});
  static const auto falseNode = std::make_shared<const Node>(Node{Kind::Constant, false, {}, {}});
  return Formula(value ? trueNode : falseNode);
}

Formula Formula::atom(Var v) {
  if (v.id == 0) throw UsageError("variable id 0 is not valid");
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, true, v, {}}));
}

Formula Formula::literal(Lit l) {
  Formula a = atom(l.var());
  return l.isNegative() ? makeNot(a) : a;
}

Formula Formula::makeNot(Formula child) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, true, {}, {std::move(child)}}));
}

Formula Formula::makeAnd(std::vector<Formula> children) {
  if (children.empty()) throw UsageError("conjunction needs at least one child");
  if (children.size() == 1) return children.front();
  return Formula(std::make_shared<const Node>(Node{Kind::And, true, {}, std::move(children)}));
}

Formula Formula::makeOr(std::vector<Formula> children) {
  if (children.empty()) throw UsageError("disjunction needs at least one child");
  if (children.size() == 1) return children.front();
  return Formula(std::make_shared<const Node>(Node{Kind::Or, true, {}, std::move(children)}));
}

Formula Formula::makeImplies(Formula lhs, Formula rhs) {
  return makeOr({makeNot(std::move(lhs)), std::move(rhs)});
}

Formula Formula::makeIff(Formula lhs, Formula rhs) {
  return makeAnd({makeImplies(lhs, rhs), makeImplies(rhs, lhs)});
}

Formula::Kind Formula::kind() const { return node_->kind; }
bool Formula::constantValue() const { return node_->value; }
Var Formula::var() const { return node_->var; }
const std::vector<Formula>& Formula::children() const { return node_->children; }

bool Formula::isLiteral() const {
  return kind() == Kind::Atom ||
         (kind() == Kind::Not && children()[0].kind() == Kind::Atom);
}

Lit Formula::asLiteral() const {
  if (kind() == Kind::Atom) return Lit::positive(var());
  return Lit::negative(children()[0].var());
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Constant:
      return a.constantValue() == b.constantValue();
    case Formula::Kind::Atom:
      return a.var() == b.var();
    default:
      return a.children() == b.children();
  }
}

namespace {

void render(const Formula& f, std::ostream& os) {
  switch (f.kind()) {
    case Formula::Kind::Constant:
      os << (f.constantValue() ? "true" : "false");
      return;
    case Formula::Kind::Atom:
      os << 'x' << f.var().id;
      return;
    case Formula::Kind::Not:
      os << "(not ";
      render(f.children()[0], os);
      os << ')';
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      os << (f.kind() == Formula::Kind::And ? "(and" : "(or");
      for (const Formula& c : f.children()) {
        os << ' ';
        render(c, os);
      }
      os << ')';
      return;
  }
}

template <class Units>
Formula fromUnits(const Units& units, bool conjunctive) {
  std::vector<Formula> parts;
  parts.reserve(units.size());
  for (Lit l : units) parts.push_back(Formula::literal(l));
  if (parts.empty()) return Formula::constant(conjunctive);
  return conjunctive ? Formula::makeAnd(std::move(parts)) : Formula::makeOr(std::move(parts));
}

}  // namespace

std::string toString(const Formula& f) {
  std::ostringstream os;
  render(f, os);
  return os.str();
}

Formula fromClause(const Clause& c) { return fromUnits(c, false); }
Formula fromTerm(const Term& t) { return fromUnits(t, true); }

Formula fromCnf(const CnfFormula& f) {
  if (f.clauses.empty()) return Formula::constant(true);
  std::vector<Formula> parts;
  for (const Clause& c : f.clauses) parts.push_back(fromClause(c));
  return Formula::makeAnd(std::move(parts));
}

Formula fromDnf(const DnfFormula& f) {
  if (f.terms.empty()) return Formula::constant(false);
  std::vector<Formula> parts;
  for (const Term& t : f.terms) parts.push_back(fromTerm(t));
  return Formula::makeOr(std::move(parts));
}

std::set<Var> variables(const Formula& f) {
  std::set<Var> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.kind() == Formula::Kind::Atom) out.insert(g.var());
    for (const Formula& c : g.children()) walk(c);
  };
  walk(f);
  return out;
}

std::uint32_t maxVarId(const Formula& f) {
  auto vars = variables(f);
  return vars.empty() ? 0 : vars.rbegin()->id;
}

bool evaluate(const Formula& f, const Assignment& a) {
  switch (f.kind()) {
    case Formula::Kind::Constant:
      return f.constantValue();
    case Formula::Kind::Atom: {
      auto v = a.value(f.var());
      if (!v) throw EvaluationError("variable x" + std::to_string(f.var().id) + " is unassigned");
      return *v;
    }
    case Formula::Kind::Not:
      return !evaluate(f.children()[0], a);
    case Formula::Kind::And:
      for (const Formula& c : f.children())
        if (!evaluate(c, a)) return false;
      return true;
    case Formula::Kind::Or:
      for (const Formula& c : f.children())
        if (evaluate(c, a)) return true;
      return false;
  }
  return false;
}

Formula negate(const Formula& f) {
  if (f.kind() == Formula::Kind::Not) return f.children()[0];
  if (f.kind() == Formula::Kind::Constant) return Formula::constant(!f.constantValue());
  return Formula::makeNot(f);
}

Formula substitute(const Formula& f, const std::map<Var, SubstitutionTarget>& mapping) {
  switch (f.kind()) {
    case Formula::Kind::Constant:
      return f;
    case Formula::Kind::Atom: {
      auto it = mapping.find(f.var());
      if (it == mapping.end()) return f;
      if (const bool* b = std::get_if<bool>(&it->second)) return Formula::constant(*b);
      Var target = std::get<Var>(it->second);
      if (target.id == 0) throw UsageError("substitution target has variable id 0");
      return Formula::atom(target);
    }
    case Formula::Kind::Not:
      return Formula::makeNot(substitute(f.children()[0], mapping));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const Formula& c : f.children()) kids.push_back(substitute(c, mapping));
      return f.kind() == Formula::Kind::And ? Formula::makeAnd(std::move(kids))
                                            : Formula::makeOr(std::move(kids));
    }
  }
  return f;
}

Formula flipPolarity(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Constant:
      return f;
    case Formula::Kind::Atom:
      return Formula::makeNot(f);
    case Formula::Kind::Not:
      return negate(flipPolarity(f.children()[0]));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const Formula& c : f.children()) kids.push_back(flipPolarity(c));
      return f.kind() == Formula::Kind::And ? Formula::makeAnd(std::move(kids))
                                            : Formula::makeOr(std::move(kids));
    }
  }
  return f;
}

Formula negationOfClauses(std::span<const Clause> clauses) {
  if (clauses.empty()) return Formula::constant(false);
  std::vector<Formula> terms;
  terms.reserve(clauses.size());
  for (const Clause& c : clauses) {
    if (c.empty()) {
      terms.push_back(Formula::constant(true));
      continue;
    }
    std::vector<Formula> lits;
    for (Lit l : c) lits.push_back(Formula::literal(~l));
    terms.push_back(Formula::makeAnd(std::move(lits)));
  }
  return Formula::makeOr(std::move(terms));
}

}  // namespace msmp
