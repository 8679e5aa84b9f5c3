// SPDX-License-Identifier: Apache-2.0

// Propositional formulas: literals, clauses and terms, CNF/DNF sets, and a
// general AST over ¬, ∧, ∨ with evaluation, substitution, polarity flipping
// and negation helpers. Clausification lives in tseitin.hpp.

#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace msmp {

struct Var {
  std::uint32_t id = 0;

  constexpr auto operator<=>(const Var&) const = default;
};

class Lit {
 public:
  constexpr Lit() = default;
  constexpr Lit(Var v, bool negative) : code_(2 * v.id + (negative ? 1u : 0u)) {}

  static Lit positive(Var v) { return Lit(v, false); }
  static Lit negative(Var v) { return Lit(v, true); }
  /// From a non-zero DIMACS integer.
  static Lit fromDimacs(int value);

  constexpr Var var() const { return Var{code_ >> 1}; }
  constexpr bool isNegative() const { return (code_ & 1u) != 0; }
  constexpr Lit operator~() const { return fromCode(code_ ^ 1u); }
  int toDimacs() const;
  constexpr std::uint32_t code() const { return code_; }
  static constexpr Lit fromCode(std::uint32_t code) {
    Lit l;
    l.code_ = code;
    return l;
  }

  constexpr auto operator<=>(const Lit&) const = default;

 private:
  std::uint32_t code_ = 0;
};

/// Orders literals by variable, positive before negative: the order used
/// for every printed literal list.
struct DimacsOrder {
  bool operator()(Lit a, Lit b) const { return a.code() < b.code(); }
};

enum class UnitKind { Clause, Term };

/// A duplicate-free set of literals with no complementary pair. Input order
/// is preserved because it fixes reference-set element order downstream.
template <UnitKind K>
class LiteralSet {
 public:
  LiteralSet() = default;

  /// Throws UsageError if the literals contain a complementary pair (a
  /// tautologous clause or contradictory term). Duplicates are merged.
  static LiteralSet make(std::span<const Lit> lits);
  static LiteralSet make(std::initializer_list<int> dimacs);
  /// Same as make() but returns nullopt instead of throwing.
  static std::optional<LiteralSet> tryMake(std::span<const Lit> lits);

  const std::vector<Lit>& lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  bool contains(Lit l) const;
  bool mentions(Var v) const;

  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }

  bool operator==(const LiteralSet&) const = default;

 private:
  std::vector<Lit> lits_;
};

using Clause = LiteralSet<UnitKind::Clause>;
using Term = LiteralSet<UnitKind::Term>;

struct CnfFormula {
  std::uint32_t numVars = 0;
  std::vector<Clause> clauses;

  std::size_t size() const { return clauses.size(); }
  bool operator==(const CnfFormula&) const = default;
};

struct DnfFormula {
  std::uint32_t numVars = 0;
  std::vector<Term> terms;

  std::size_t size() const { return terms.size(); }
  bool operator==(const DnfFormula&) const = default;
};

/// Consistent (partial or total) truth assignment over variables 1..n.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::uint32_t numVars) : values_(numVars + 1, 0) {}
  static Assignment fromLiterals(std::uint32_t numVars, std::span<const Lit> lits);

  std::uint32_t numVars() const {
    return values_.empty() ? 0 : static_cast<std::uint32_t>(values_.size() - 1);
  }
  /// Throws UsageError when the variable already has the opposite value.
  void set(Lit l);
  void assign(Var v, bool value) { set(Lit(v, !value)); }
  std::optional<bool> value(Var v) const;
  bool isTrue(Lit l) const;
  bool isTotal() const;
  std::vector<Lit> literals() const;
  std::vector<Var> trueVars() const;
  /// The assignment with every assigned variable complemented.
  Assignment complemented() const;

  bool operator==(const Assignment&) const = default;

 private:
  std::vector<std::int8_t> values_;
};

bool satisfies(const Assignment& a, const Clause& c);
bool satisfies(const Assignment& a, const Term& t);
bool satisfies(const Assignment& a, const CnfFormula& f);
bool satisfies(const Assignment& a, const DnfFormula& f);

/// Immutable propositional formula. Copies share structure.
class Formula {
 public:
  enum class Kind { Constant, Atom, Not, And, Or };

  Formula();  // constant true

  static Formula constant(bool value);
  static Formula atom(Var v);
  static Formula literal(Lit l);
  static Formula makeNot(Formula child);
  /// Children must be non-empty; a single child is returned unchanged.
  static Formula makeAnd(std::vector<Formula> children);
  static Formula makeOr(std::vector<Formula> children);
  static Formula makeImplies(Formula lhs, Formula rhs);
  static Formula makeIff(Formula lhs, Formula rhs);

  Kind kind() const;
  bool constantValue() const;
  Var var() const;
  const std::vector<Formula>& children() const;
  bool isLiteral() const;
  /// Only valid when isLiteral().
  Lit asLiteral() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Prefix text rendering, the same syntax parse_formula_text accepts.
std::string toString(const Formula& f);

Formula fromClause(const Clause& c);
Formula fromTerm(const Term& t);
Formula fromCnf(const CnfFormula& f);
Formula fromDnf(const DnfFormula& f);

std::set<Var> variables(const Formula& f);
std::uint32_t maxVarId(const Formula& f);

/// Throws EvaluationError naming the first unassigned variable reached.
bool evaluate(const Formula& f, const Assignment& a);

Formula negate(const Formula& f);

using SubstitutionTarget = std::variant<Var, bool>;
/// Replaces atoms by variables or constants (F[X/Y], F[x/v]). All
/// replacements happen simultaneously. Throws UsageError for a target
/// variable with id 0.
Formula substitute(const Formula& f, const std::map<Var, SubstitutionTarget>& mapping);

/// Complements every leaf literal; the tree above the leaves is unchanged.
Formula flipPolarity(const Formula& f);

/// ∨_{c∈S} ¬c, each ¬c a term of complemented literals. Empty S gives the
/// constant false.
Formula negationOfClauses(std::span<const Clause> clauses);

}  // namespace msmp
