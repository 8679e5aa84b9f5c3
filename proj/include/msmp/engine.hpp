// SPDX-License-Identifier: Apache-2.0

// Monotone predicates over a reference set R = {0..n-1} and minimal-set
// extraction. SAT-backed predicates come in three shapes:
//   L: P(W) = SAT(G ∧ ∧_{u∈R\W} σ(u))
//   P: P(W) = ¬SAT(G ∧ ∧_{u∈W} σ(u))
//   B: P(W) = ¬SAT(G ∧ ∨_{u∈R\W} σ(u))

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msmp/formula.hpp"
#include "msmp/oracle.hpp"
#include "msmp/tseitin.hpp"

namespace msmp {

enum class Form { L, P, B };

std::string_view formName(Form f);

/// Sorted element indices into R.
using ElementSet = std::vector<std::size_t>;

struct TestOutcome {
  bool holds = false;
  /// The oracle model when the underlying query was satisfiable.
  std::optional<Assignment> witness;
};

class MonotonePredicate {
 public:
  virtual ~MonotonePredicate() = default;

  virtual std::size_t size() const = 0;
  virtual Form form() const = 0;
  /// One oracle call for SAT-backed predicates.
  virtual TestOutcome test(const ElementSet& w) = 0;
};

/// Everything needed to instantiate a SAT-backed predicate. Built through
/// PredicateBuilder.
struct PredicateSpec {
  Form form = Form::P;
  CnfFormula base;
  /// σ(u_i) as a literal.
  std::vector<Lit> elements;
  /// Adds the disjunction of ¬σ(u) over the side not covered by the form:
  /// over R\W for P, over W for L. Used by the equivalence-style predicates.
  bool complementDisjunction = false;
  /// L only: σ(u_i) ⊨ σ(u_j) for i > j, so only the literal of the largest
  /// index in R\W is assumed.
  bool nested = false;
};

/// Accumulates G and element literals over a shared variable allocator.
class PredicateBuilder {
 public:
  PredicateBuilder(Form form, std::uint32_t numVars);
  PredicateBuilder(const PredicateBuilder&) = delete;
  PredicateBuilder& operator=(const PredicateBuilder&) = delete;

  VarAllocator& vars() { return vars_; }
  TseitinEncoder& encoder() { return encoder_; }

  void addBase(const Clause& c);
  void addBase(const CnfFormula& f);
  void addBase(const Formula& f);

  /// Element whose σ is a literal already present in the encoding.
  void addElement(Lit sigma);
  /// Element whose σ is `f`, encoded as a fully defined literal.
  void addElement(const Formula& f);
  /// Element whose σ is the conjunction of `clauses`, via a selector s with
  /// s → c for each clause. Only valid where σ is used positively.
  void addSelectorElement(std::span<const Clause> clauses);

  void setComplementDisjunction(bool on) { spec_.complementDisjunction = on; }
  void setNested(bool on) { spec_.nested = on; }

  PredicateSpec finish();

 private:
  PredicateSpec spec_;
  VarAllocator vars_;
  std::vector<Clause> clauses_;
  TseitinEncoder encoder_;
};

/// A predicate evaluated on its own oracle session.
class SatPredicate final : public MonotonePredicate {
 public:
  SatPredicate(PredicateSpec spec, const OracleFactory& factory);

  std::size_t size() const override { return spec_.elements.size(); }
  Form form() const override { return spec_.form; }
  TestOutcome test(const ElementSet& w) override;

  std::uint64_t calls() const { return oracle_->calls(); }
  const PredicateSpec& spec() const { return spec_; }

 private:
  /// Adds (¬a ∨ lits) under a fresh activation literal a.
  Lit activate(const std::vector<Lit>& lits);

  PredicateSpec spec_;
  std::unique_ptr<Oracle> oracle_;
  std::uint32_t nextVar_;
};

/// Presents `inner` with its elements reordered: element i here is
/// element order[i] of `inner`.
class PermutedPredicate final : public MonotonePredicate {
 public:
  PermutedPredicate(MonotonePredicate& inner, std::vector<std::size_t> order);

  std::size_t size() const override { return inner_.size(); }
  Form form() const override { return inner_.form(); }
  TestOutcome test(const ElementSet& w) override;

  /// Maps a set over this predicate's indices back to the inner indices.
  ElementSet toInner(const ElementSet& w) const;

 private:
  MonotonePredicate& inner_;
  std::vector<std::size_t> order_;
};

enum class Algorithm { Deletion, Insertion, Dichotomic, QuickXplain, Progression };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::Deletion, Algorithm::Insertion,
                                               Algorithm::Dichotomic, Algorithm::QuickXplain,
                                               Algorithm::Progression};

std::string_view algorithmName(Algorithm a);
/// Throws UsageError for unknown names.
Algorithm parseAlgorithm(std::string_view name);

struct ExtractOptions {
  bool checkWellPosed = true;
  /// Message of the IllPosedError raised when P(R) is false.
  std::string illPosedMessage = "ill-posed instance: the predicate is false on the reference set";
};

struct MinimalSetResult {
  ElementSet minimal;
  /// |R|.
  std::size_t referenceSize = 0;
  /// L: model of the final P(M) test. P/B: model of the last failing test
  /// (diagnostic only).
  std::optional<Assignment> witness;
  std::uint64_t oracleCalls = 0;
  std::uint64_t wellPosedCalls = 0;
  /// Extra P(M) call made so that L results always carry a model.
  std::uint64_t witnessCalls = 0;
  Algorithm algorithm = Algorithm::Progression;

  std::uint64_t predicateTests() const { return oracleCalls - wellPosedCalls - witnessCalls; }
};

/// Throws IllPosedError when the well-posedness check fails.
MinimalSetResult extractMinimal(MonotonePredicate& p, Algorithm alg,
                                const ExtractOptions& options = {});

}  // namespace msmp
