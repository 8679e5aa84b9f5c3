// SPDX-License-Identifier: Apache-2.0

#include "msmp/reductions.hpp"

#include <algorithm>
#include <map>

#include "msmp/cardenc.hpp"
#include "msmp/error.hpp"
#include "msmp/tseitin.hpp"

namespace msmp {

namespace {

using K = ProblemKind;

struct KindInfo {
  ProblemKind kind;
  std::string_view name;
  std::string_view cli;
};

constexpr KindInfo kKinds[] = {
    {K::FMUS, "FMUS", "mus"},         {K::FMCS, "FMCS", "mcs"},
    {K::FMSS, "FMSS", "mss"},         {K::FMES, "FMES", "mes"},
    {K::FMDS, "FMDS", "mds"},         {K::FMNS, "FMNS", "mns"},
    {K::FMCFS, "FMCFS", "mcfs"},      {K::FMFS, "FMFS", "mfs"},
    {K::FMnM, "FMnM", "minmodel"},    {K::FMxM, "FMxM", "maxmodel"},
    {K::FPIt, "FPIt", "pit"},         {K::FPIc, "FPIc", "pic"},
    {K::FLEIt, "FLEIt", "leit"},      {K::FLEIc, "FLEIc", "leic"},
    {K::FMnES, "FMnES", "mnes"},      {K::FMxES, "FMxES", "mxes"},
    {K::FBBr, "FBBr", "backbone"},    {K::FBB, "FBB", "backbone-full"},
    {K::FVInd, "FVInd", "varind"},    {K::FAutL, "FAutL", "autarky"},
    {K::FAutB, "FAutB", "autarky-b"}, {K::FSMCS, "FSMCS", "smcs"},
    {K::FSMDS, "FSMDS", "smds"},      {K::FSMCFS, "FSMCFS", "smcfs"},
    {K::FSMnM, "FSMnM", "smnm"},
};

std::uint32_t universe(const ProblemInstance& inst) {
  return std::visit(
      [&](const auto& f) -> std::uint32_t {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Formula>)
          return std::max(inst.numVars, maxVarId(f));
        else
          return std::max(inst.numVars, f.numVars);
      },
      inst.formula);
}

const DnfFormula& requireDnf(const ProblemInstance& inst, ProblemKind kind) {
  if (const auto* d = std::get_if<DnfFormula>(&inst.formula)) return *d;
  throw UsageError(std::string(kindName(kind)) + " needs a DNF formula (\"p dnf\" input)");
}

void sortLiterals(std::vector<int>& v) {
  std::sort(v.begin(), v.end(), [](int a, int b) {
    int aa = std::abs(a), bb = std::abs(b);
    return aa != bb ? aa < bb : a > b;
  });
}

/// Clause groups as element lists: element i holds the clauses of group i+1.
struct GroupedElements {
  std::vector<Clause> hard;
  std::vector<std::vector<Clause>> elements;
};

GroupedElements groupElements(const ProblemInstance& inst, const CnfFormula& f) {
  GroupedElements out;
  if (!inst.groups) {
    for (const Clause& c : f.clauses) out.elements.push_back({c});
    return out;
  }
  const ClauseGroups& g = *inst.groups;
  if (g.groupOf.size() != f.clauses.size())
    throw UsageError("group table does not match the clause list");
  out.elements.resize(g.numGroups);
  for (std::size_t i = 0; i < f.clauses.size(); ++i) {
    std::uint32_t id = g.groupOf[i];
    if (id == 0)
      out.hard.push_back(f.clauses[i]);
    else
      out.elements.at(id - 1).push_back(f.clauses[i]);
  }
  return out;
}

bool acceptsGroups(ProblemKind k) {
  return k == K::FMUS || k == K::FMCS || k == K::FMSS;
}

std::vector<Lit> referenceLiterals(std::uint32_t n, const std::vector<Lit>& unit) {
  std::vector<Lit> out;
  for (std::uint32_t v = 1; v <= n; ++v) {
    bool mentioned = std::any_of(unit.begin(), unit.end(), [&](Lit l) { return l.var().id == v; });
    if (mentioned) continue;
    out.push_back(Lit::positive(Var{v}));
    out.push_back(Lit::negative(Var{v}));
  }
  return out;
}

std::map<Var, SubstitutionTarget> shiftMap(std::uint32_t n, std::uint32_t offset) {
  std::map<Var, SubstitutionTarget> m;
  for (std::uint32_t v = 1; v <= n; ++v) m.emplace(Var{v}, Var{v + offset});
  return m;
}

/// Adds p_i selectors, the counter over them, and bound elements b_0..b_n.
void addBoundElements(PredicateBuilder& b, const std::vector<Lit>& selectors) {
  CounterEncoding enc = encodeCounter(selectors, static_cast<std::uint32_t>(selectors.size()),
                                      b.vars());
  for (const Clause& c : enc.clauses) b.addBase(c);
  b.addElement(Formula::constant(true));
  for (Lit l : enc.atLeast) b.addElement(l);
  b.setNested(true);
}

std::vector<Lit> freshSelectors(PredicateBuilder& b, std::size_t n) {
  std::vector<Lit> p;
  for (std::size_t i = 0; i < n; ++i) p.push_back(Lit::positive(b.vars().fresh()));
  return p;
}

bool isSat(const OracleFactory& factory, const Formula& f, std::uint32_t numVars,
           std::optional<Assignment>* model = nullptr) {
  Clausification cl = clausify(f, numVars);
  auto oracle = factory();
  oracle->addFormula(cl.cnf);
  SolveOutcome out = oracle->solve();
  if (model && out.witness) {
    Assignment restricted(numVars);
    for (std::uint32_t v = 1; v <= numVars; ++v)
      restricted.assign(Var{v}, out.witness->isTrue(Lit::positive(Var{v})));
    *model = std::move(restricted);
  }
  return out.sat();
}

}  // namespace

std::string_view kindName(ProblemKind k) {
  for (const auto& i : kKinds)
    if (i.kind == k) return i.name;
  return "?";
}

std::string_view kindCliName(ProblemKind k) {
  for (const auto& i : kKinds)
    if (i.kind == k) return i.cli;
  return "?";
}

std::optional<ProblemKind> kindFromCliName(std::string_view name) {
  for (const auto& i : kKinds)
    if (i.cli == name) return i.kind;
  return std::nullopt;
}

bool isOptimizationKind(ProblemKind k) {
  return k == K::FSMCS || k == K::FSMDS || k == K::FSMCFS || k == K::FSMnM;
}

bool hasLiteralPayload(ProblemKind k) {
  return k == K::FPIt || k == K::FPIc || k == K::FLEIt || k == K::FLEIc || k == K::FBBr ||
         k == K::FBB;
}

const CnfFormula& requireCnf(const ProblemInstance& inst, ProblemKind kind) {
  if (const auto* c = std::get_if<CnfFormula>(&inst.formula)) return *c;
  throw UsageError(std::string(kindName(kind)) + " needs a CNF formula");
}

Formula mainFormula(const ProblemInstance& inst) {
  return std::visit(
      [](const auto& f) -> Formula {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, CnfFormula>)
          return fromCnf(f);
        else if constexpr (std::is_same_v<T, DnfFormula>)
          return fromDnf(f);
        else
          return f;
      },
      inst.formula);
}

BuiltPredicate buildPredicate(ProblemKind kind, const ProblemInstance& inst) {
  if (inst.groups && !acceptsGroups(kind))
    throw UsageError("grouped input is only supported for mus, mcs and mss");
  const std::uint32_t n = universe(inst);
  BuiltPredicate out;
  out.illPosedMessage = std::string(kindName(kind)) + ": the predicate is false on the reference set";

  auto make = [&](Form form, std::uint32_t reserved) { return PredicateBuilder(form, reserved); };

  switch (kind) {
    case K::FMUS:
    case K::FMCS:
    case K::FMSS: {
      const CnfFormula& f = requireCnf(inst, kind);
      GroupedElements ge = groupElements(inst, f);
      auto b = make(kind == K::FMUS ? Form::P : Form::L, n);
      for (const Clause& c : ge.hard) b.addBase(c);
      for (const auto& e : ge.elements) b.addSelectorElement(e);
      out.spec = b.finish();
      out.illPosedMessage =
          kind == K::FMUS
              ? "FMUS requires F ⊨ ⊥: an MUS is defined only for unsatisfiable formulas"
              : std::string(kindName(kind)) + " requires the hard clauses to be satisfiable";
      break;
    }
    case K::FMES:
    case K::FMDS:
    case K::FMNS: {
      const CnfFormula& f = requireCnf(inst, kind);
      auto b = make(kind == K::FMES ? Form::P : Form::L, n);
      for (const Clause& c : f.clauses) b.addElement(fromClause(c));
      b.setComplementDisjunction(true);
      out.spec = b.finish();
      if (kind != K::FMES)
        out.illPosedMessage = std::string(kindName(kind)) +
                              " requires F ⊭ ⊤: a distinguishing subset exists only when F is "
                              "not valid (a non-empty CNF)";
      break;
    }
    case K::FMCFS:
    case K::FMFS: {
      const CnfFormula& f = requireCnf(inst, kind);
      auto b = make(Form::L, n);
      for (const Clause& c : f.clauses) b.addElement(negate(fromClause(c)));
      out.spec = b.finish();
      break;
    }
    case K::FMnM:
    case K::FMxM: {
      Formula f = mainFormula(inst);
      if (kind == K::FMxM) f = flipPolarity(f);
      auto b = make(Form::L, n);
      b.addBase(f);
      for (std::uint32_t v = 1; v <= n; ++v) b.addElement(Lit::negative(Var{v}));
      out.spec = b.finish();
      out.illPosedMessage = std::string(kindName(kind)) +
                            " requires F ⊭ ⊥: models exist only for satisfiable formulas";
      break;
    }
    case K::FPIt: {
      if (!inst.term) throw UsageError("FPIt needs a reference term t (--term)");
      auto b = make(Form::P, n);
      b.addBase(negate(mainFormula(inst)));
      for (Lit l : *inst.term) b.addElement(l);
      out.spec = b.finish();
      out.illPosedMessage = "FPIt requires t ⊨ F: the reference term must be an implicant";
      break;
    }
    case K::FPIc: {
      if (!inst.clause) throw UsageError("FPIc needs a reference clause c (--clause)");
      auto b = make(Form::P, n);
      b.addBase(mainFormula(inst));
      for (Lit l : *inst.clause) b.addElement(~l);
      out.spec = b.finish();
      out.illPosedMessage = "FPIc requires F ⊨ c: the reference clause must be an implicate";
      break;
    }
    case K::FLEIt: {
      const DnfFormula& f = requireDnf(inst, kind);
      if (!inst.unitIndex || *inst.unitIndex >= f.terms.size())
        throw IllPosedError("FLEIt requires the indexed term t_k to belong to F");
      std::size_t k = *inst.unitIndex;
      std::vector<Formula> parts{fromTerm(f.terms[k])};
      for (std::size_t i = 0; i < f.terms.size(); ++i)
        if (i != k) parts.push_back(negate(fromTerm(f.terms[i])));
      auto b = make(Form::B, n);
      b.addBase(parts.size() == 1 ? parts[0] : Formula::makeAnd(parts));
      out.referenceLits = referenceLiterals(n, f.terms[k].lits());
      for (Lit l : out.referenceLits) b.addElement(~l);
      out.spec = b.finish();
      break;
    }
    case K::FLEIc: {
      const CnfFormula& f = requireCnf(inst, kind);
      if (!inst.unitIndex || *inst.unitIndex >= f.clauses.size())
        throw IllPosedError("FLEIc requires the indexed clause c_k to belong to F");
      std::size_t k = *inst.unitIndex;
      std::vector<Formula> parts{negate(fromClause(f.clauses[k]))};
      for (std::size_t i = 0; i < f.clauses.size(); ++i)
        if (i != k) parts.push_back(fromClause(f.clauses[i]));
      auto b = make(Form::B, n);
      b.addBase(parts.size() == 1 ? parts[0] : Formula::makeAnd(parts));
      out.referenceLits = referenceLiterals(n, f.clauses[k].lits());
      for (Lit l : out.referenceLits) b.addElement(l);
      out.spec = b.finish();
      break;
    }
    case K::FMnES: {
      const CnfFormula& j = requireCnf(inst, kind);
      if (!inst.target) throw UsageError("FMnES needs a target formula I (--target)");
      auto b = make(Form::P, std::max(n, maxVarId(*inst.target)));
      b.addBase(negate(*inst.target));
      for (const Clause& c : j.clauses) b.addSelectorElement(std::span<const Clause>(&c, 1));
      out.spec = b.finish();
      out.illPosedMessage = "FMnES requires J ⊨ I: the full clause set must entail the target";
      break;
    }
    case K::FMxES: {
      if (!inst.candidates) throw UsageError("FMxES needs a candidate clause set N (--candidates)");
      auto b = make(Form::B, std::max(n, inst.candidates->numVars));
      b.addBase(mainFormula(inst));
      for (const Clause& c : inst.candidates->clauses) b.addElement(negate(fromClause(c)));
      out.spec = b.finish();
      break;
    }
    case K::FBBr: {
      if (!inst.model) throw UsageError("FBBr needs a reference model V");
      auto b = make(Form::B, n);
      b.addBase(mainFormula(inst));
      for (Lit l : inst.model->literals()) b.addElement(~l);
      out.spec = b.finish();
      break;
    }
    case K::FBB: {
      Formula f = mainFormula(inst);
      auto b = make(Form::B, 2 * n);
      b.addBase(f);
      b.addBase(substitute(f, shiftMap(n, n)));
      for (std::uint32_t v = 1; v <= n; ++v)
        b.addElement(Formula::makeAnd(
            {Formula::atom(Var{v}), Formula::literal(Lit::negative(Var{v + n}))}));
      out.spec = b.finish();
      break;
    }
    case K::FVInd: {
      Formula f = mainFormula(inst);
      Formula fy = substitute(f, shiftMap(n, n));
      Formula g = Formula::makeOr({Formula::makeAnd({fy, negate(f)}),
                                   Formula::makeAnd({negate(fy), f})});
      auto b = make(Form::P, 2 * n);
      b.addBase(g);
      for (std::uint32_t v = 1; v <= n; ++v)
        b.addElement(Formula::makeIff(Formula::atom(Var{v}), Formula::atom(Var{v + n})));
      out.spec = b.finish();
      break;
    }
    case K::FAutL:
    case K::FAutB: {
      const CnfFormula& f = requireCnf(inst, kind);
      auto plus = [&](Var x) { return Lit::positive(Var{x.id + n}); };
      auto one = [&](Var x) { return Lit::positive(Var{x.id + 2 * n}); };
      auto zero = [&](Var x) { return Lit::positive(Var{x.id + 3 * n}); };
      auto b = make(kind == K::FAutL ? Form::L : Form::B, 4 * n);
      auto& enc = b.encoder();
      for (std::uint32_t v = 1; v <= n; ++v) {
        Var x{v};
        Lit px = Lit::positive(x);
        // x¹ ↔ x⁺ ∧ x and x⁰ ↔ x⁺ ∧ ¬x.
        enc.emit({~one(x), plus(x)});
        enc.emit({~one(x), px});
        enc.emit({one(x), ~plus(x), ~px});
        enc.emit({~zero(x), plus(x)});
        enc.emit({~zero(x), ~px});
        enc.emit({zero(x), ~plus(x), px});
      }
      for (const Clause& c : f.clauses) {
        std::vector<Lit> c01;
        for (Lit l : c) c01.push_back(l.isNegative() ? zero(l.var()) : one(l.var()));
        for (Lit l : c) {
          std::vector<Lit> lits{~plus(l.var())};
          lits.insert(lits.end(), c01.begin(), c01.end());
          enc.emit(std::move(lits));
        }
      }
      for (std::uint32_t v = 1; v <= n; ++v) b.addElement(plus(Var{v}));
      out.spec = b.finish();
      break;
    }
    case K::FSMCS:
    case K::FSMDS:
    case K::FSMCFS: {
      const CnfFormula& f = requireCnf(inst, kind);
      auto b = make(Form::L, n);
      out.selectors = freshSelectors(b, f.clauses.size());
      if (kind == K::FSMDS) b.addBase(negate(fromCnf(f)));
      for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        Lit p = out.selectors[i];
        if (kind == K::FSMCFS) {
          for (Lit l : f.clauses[i]) b.encoder().emit({~p, ~l});
        } else {
          std::vector<Lit> lits{~p};
          lits.insert(lits.end(), f.clauses[i].begin(), f.clauses[i].end());
          b.encoder().emit(std::move(lits));
        }
      }
      addBoundElements(b, out.selectors);
      out.spec = b.finish();
      if (kind == K::FSMDS)
        out.illPosedMessage =
            "FSMDS requires F ⊭ ⊤: a distinguishing subset exists only when F is not valid "
            "(a non-empty CNF)";
      break;
    }
    case K::FSMnM: {
      Formula f = mainFormula(inst);
      auto b = make(Form::L, n);
      b.addBase(f);
      out.selectors = freshSelectors(b, n);
      for (std::uint32_t v = 1; v <= n; ++v)
        b.encoder().emit({~out.selectors[v - 1], Lit::negative(Var{v})});
      addBoundElements(b, out.selectors);
      out.spec = b.finish();
      out.illPosedMessage = "FSMnM requires F ⊭ ⊥: models exist only for satisfiable formulas";
      break;
    }
  }
  return out;
}

PreconditionResult checkPreconditions(ProblemKind kind, const ProblemInstance& inst,
                                      const OracleFactory& factory, bool assumeWellPosed) {
  PreconditionResult pre;
  const std::uint32_t n = universe(inst);
  switch (kind) {
    case K::FMCS:
    case K::FMSS:
    case K::FAutL:
    case K::FAutB: {
      if (assumeWellPosed) break;
      ++pre.calls;
      if (isSat(factory, mainFormula(inst), n)) {
        std::string what = (kind == K::FAutL || kind == K::FAutB) ? "FAut" : std::string(kindName(kind));
        throw IllPosedError(what + " requires F ⊨ ⊥: the formula must be unsatisfiable");
      }
      break;
    }
    case K::FMxES: {
      if (assumeWellPosed) break;
      ++pre.calls;
      if (!isSat(factory, mainFormula(inst), std::max(n, inst.candidates ? inst.candidates->numVars : 0)))
        throw IllPosedError("FMxES requires J ⊭ ⊥: the base formula must be satisfiable");
      break;
    }
    case K::FBB: {
      ++pre.calls;
      if (!isSat(factory, mainFormula(inst), n, &pre.model))
        throw IllPosedError("FBB requires F ⊭ ⊥: the backbone is defined for satisfiable formulas");
      break;
    }
    case K::FBBr: {
      if (inst.model) {
        if (assumeWellPosed) break;
        bool ok = false;
        try {
          ok = evaluate(mainFormula(inst), *inst.model);
        } catch (const EvaluationError& e) {
          throw IllPosedError(std::string("FBBr requires V to be a model of F: ") + e.what());
        }
        if (!ok) throw IllPosedError("FBBr requires V to be a model of F");
        break;
      }
      ++pre.calls;
      if (!isSat(factory, mainFormula(inst), n, &pre.model))
        throw IllPosedError("FBBr requires F ⊭ ⊥: the backbone is defined for satisfiable formulas");
      break;
    }
    default:
      break;
  }
  return pre;
}

ProblemAnswer decodeAnswer(ProblemKind kind, const ProblemInstance& inst,
                           const BuiltPredicate& built, const MinimalSetResult& result,
                           const PreconditionResult& pre) {
  ProblemAnswer ans;
  ans.kind = kind;
  ans.engine = result;
  ans.extraCalls = pre.calls;
  const std::size_t r = built.spec.elements.size();

  std::vector<bool> inM(r, false);
  for (std::size_t i : result.minimal) inM[i] = true;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < r; ++i)
    if (!inM[i]) rest.push_back(i);

  auto indices = [](const std::vector<std::size_t>& s) {
    std::vector<int> v;
    for (std::size_t i : s) v.push_back(static_cast<int>(i + 1));
    return v;
  };
  auto needWitness = [&]() -> const Assignment& {
    if (!result.witness) throw Error("internal error: extraction returned no witness");
    return *result.witness;
  };

  switch (kind) {
    case K::FMUS:
    case K::FMCS:
    case K::FMES:
    case K::FMDS:
    case K::FMCFS:
    case K::FMnES:
    case K::FMnM:
    case K::FAutB:
      ans.values = indices(result.minimal);
      break;
    case K::FMSS:
    case K::FMNS:
    case K::FMFS:
    case K::FMxES:
    case K::FMxM:
    case K::FVInd:
    case K::FAutL:
      ans.values = indices(rest);
      break;
    case K::FPIt:
      for (std::size_t i : result.minimal) ans.values.push_back(inst.term->lits()[i].toDimacs());
      break;
    case K::FPIc:
      for (std::size_t i : result.minimal) ans.values.push_back(inst.clause->lits()[i].toDimacs());
      break;
    case K::FLEIt:
    case K::FLEIc: {
      const std::vector<Lit>& unit =
          kind == K::FLEIt ? std::get<DnfFormula>(inst.formula).terms[*inst.unitIndex].lits()
                           : std::get<CnfFormula>(inst.formula).clauses[*inst.unitIndex].lits();
      for (Lit l : unit) ans.values.push_back(l.toDimacs());
      if (result.minimal.empty() && r > 0) {
        // G is unsatisfiable, so every literal is admissible on its own.
        ans.degenerate = true;
        for (Lit l : built.referenceLits)
          if (!l.isNegative()) ans.values.push_back(l.toDimacs());
      } else {
        for (std::size_t i : rest) ans.values.push_back(built.referenceLits[i].toDimacs());
      }
      break;
    }
    case K::FBBr: {
      std::vector<Lit> v = inst.model->literals();
      for (std::size_t i : rest) ans.values.push_back(v[i].toDimacs());
      ans.referenceModel = inst.model;
      break;
    }
    case K::FBB: {
      if (!pre.model) throw Error("internal error: FBB decode needs a model of F");
      for (std::size_t i : rest) {
        Var x{static_cast<std::uint32_t>(i + 1)};
        ans.values.push_back(Lit(x, !pre.model->isTrue(Lit::positive(x))).toDimacs());
      }
      break;
    }
    case K::FSMCS:
    case K::FSMDS:
    case K::FSMCFS:
    case K::FSMnM: {
      const Assignment& w = needWitness();
      std::size_t maxb = rest.empty() ? 0 : rest.back();
      std::size_t total = built.selectors.size();
      ans.optimum = static_cast<std::int64_t>(total - maxb);
      for (std::size_t i = 0; i < total; ++i)
        if (!w.isTrue(built.selectors[i])) ans.values.push_back(static_cast<int>(i + 1));
      break;
    }
  }
  if (hasLiteralPayload(kind))
    sortLiterals(ans.values);
  else
    std::sort(ans.values.begin(), ans.values.end());
  return ans;
}

ProblemAnswer solve(ProblemKind kind, const ProblemInstance& inst, const OracleFactory& factory,
                    const SolveOptions& options) {
  PreconditionResult pre = checkPreconditions(kind, inst, factory, options.assumeWellPosed);
  const ProblemInstance* use = &inst;
  ProblemInstance local;
  if (kind == K::FBBr && !inst.model) {
    local = inst;
    local.model = pre.model;
    use = &local;
  }
  BuiltPredicate built = buildPredicate(kind, *use);
  SatPredicate pred(built.spec, factory);
  ExtractOptions eo;
  eo.checkWellPosed = !options.assumeWellPosed;
  eo.illPosedMessage = built.illPosedMessage;
  MinimalSetResult result = extractMinimal(pred, options.algorithm, eo);
  return decodeAnswer(kind, *use, built, result, pre);
}

std::string certifyMinimal(ProblemKind kind, const ProblemInstance& inst,
                           const ProblemAnswer& answer, const OracleFactory& factory) {
  ProblemInstance local = inst;
  if (kind == K::FBBr && !local.model) local.model = answer.referenceModel;
  BuiltPredicate built = buildPredicate(kind, local);
  SatPredicate pred(built.spec, factory);
  const ElementSet& m = answer.engine.minimal;
  if (!pred.test(m).holds) return "predicate is false on the returned set";
  for (std::size_t i = 0; i < m.size(); ++i) {
    ElementSet w;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (j != i) w.push_back(m[j]);
    if (pred.test(w).holds)
      return "not minimal: element " + std::to_string(m[i] + 1) + " can be removed";
  }
  return {};
}

}  // namespace msmp
