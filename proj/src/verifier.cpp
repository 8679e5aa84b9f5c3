// SPDX-License-Identifier: Apache-2.0

#include "msmp/verifier.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <unordered_map>

#include "msmp/error.hpp"

namespace msmp {

namespace {

using Mask = std::uint32_t;
using K = ProblemKind;

bool litTrue(Lit l, Mask a) { return (((a >> (l.var().id - 1)) & 1u) != 0) != l.isNegative(); }

bool clauseTrue(const Clause& c, Mask a) {
  for (Lit l : c)
    if (litTrue(l, a)) return true;
  return false;
}

bool termTrue(const Term& t, Mask a) {
  for (Lit l : t)
    if (!litTrue(l, a)) return false;
  return true;
}

bool evalMask(const Formula& f, Mask a) {
  switch (f.kind()) {
    case Formula::Kind::Constant: return f.constantValue();
    case Formula::Kind::Atom: return ((a >> (f.var().id - 1)) & 1u) != 0;
    case Formula::Kind::Not: return !evalMask(f.children()[0], a);
    case Formula::Kind::And:
      for (const Formula& c : f.children())
        if (!evalMask(c, a)) return false;
      return true;
    case Formula::Kind::Or:
      for (const Formula& c : f.children())
        if (evalMask(c, a)) return true;
      return false;
  }
  return false;
}

void checkVars(std::uint32_t n, const BruteForceBudget& budget) {
  if (n > budget.maxVars)
    throw BudgetError("brute force over " + std::to_string(n) + " variables exceeds the budget of " +
                      std::to_string(budget.maxVars));
}

void checkElements(std::size_t m, const BruteForceBudget& budget) {
  if (m > budget.maxElements)
    throw BudgetError("brute force over " + std::to_string(m) + " elements exceeds the budget of " +
                      std::to_string(budget.maxElements));
}

std::vector<char> truthTable(const Formula& f, std::uint32_t n) {
  if (maxVarId(f) > n) throw UsageError("formula mentions variables outside the universe");
  std::vector<char> t(std::size_t{1} << n);
  for (Mask a = 0; a < t.size(); ++a) t[a] = evalMask(f, a);
  return t;
}

/// Closes `mark` downward: mark[S] becomes true if some marked superset exists.
void closeDown(std::vector<char>& mark, std::size_t m) {
  for (std::size_t b = 0; b < m; ++b)
    for (Mask s = 0; s < mark.size(); ++s)
      if (((s >> b) & 1u) && mark[s]) mark[s ^ (Mask{1} << b)] = 1;
}

/// Closes `mark` upward: mark[S] becomes true if some marked subset exists.
void closeUp(std::vector<char>& mark, std::size_t m) {
  for (std::size_t b = 0; b < m; ++b)
    for (Mask s = 0; s < mark.size(); ++s)
      if (!((s >> b) & 1u) && mark[s]) mark[s | (Mask{1} << b)] = 1;
}

std::vector<int> indicesOf(Mask s) {
  std::vector<int> v;
  for (int b = 0; b < 32; ++b)
    if ((s >> b) & 1u) v.push_back(b + 1);
  return v;
}

void sortLits(std::vector<int>& v) {
  std::sort(v.begin(), v.end(), [](int a, int b) {
    int aa = std::abs(a), bb = std::abs(b);
    return aa != bb ? aa < bb : a > b;
  });
}

void canonicalize(std::vector<std::vector<int>>& answers) {
  std::sort(answers.begin(), answers.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  answers.erase(std::unique(answers.begin(), answers.end()), answers.end());
}

/// Minimal sets S (over m elements) with good[S].
std::vector<Mask> minimalGood(const std::vector<char>& good, std::size_t m) {
  std::vector<Mask> out;
  for (Mask s = 0; s < good.size(); ++s) {
    if (!good[s]) continue;
    bool minimal = true;
    for (std::size_t b = 0; b < m && minimal; ++b)
      if (((s >> b) & 1u) && good[s ^ (Mask{1} << b)]) minimal = false;
    if (minimal) out.push_back(s);
  }
  return out;
}

std::uint32_t universeOf(const ProblemInstance& inst) {
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

struct ClauseTable {
  std::size_t m = 0;
  Mask full = 0;
  std::vector<Mask> satMask;  // per assignment: clauses it satisfies
};

ClauseTable clauseTable(const std::vector<Clause>& clauses, std::uint32_t n,
                        const BruteForceBudget& budget) {
  checkElements(clauses.size(), budget);
  ClauseTable t;
  t.m = clauses.size();
  t.full = t.m == 0 ? 0 : static_cast<Mask>((std::uint64_t{1} << t.m) - 1);
  t.satMask.resize(std::size_t{1} << n);
  for (Mask a = 0; a < t.satMask.size(); ++a) {
    Mask s = 0;
    for (std::size_t i = 0; i < t.m; ++i)
      if (clauseTrue(clauses[i], a)) s |= Mask{1} << i;
    t.satMask[a] = s;
  }
  return t;
}

std::vector<char> closedMarks(const ClauseTable& t, auto&& pick) {
  std::vector<char> mark(std::size_t{1} << t.m, 0);
  for (Mask a = 0; a < t.satMask.size(); ++a)
    if (auto s = pick(a)) mark[*s] = 1;
  closeDown(mark, t.m);
  return mark;
}

BruteResult bruteGroups(ProblemKind kind, const ProblemInstance& inst, const CnfFormula& f,
                        std::uint32_t n, const BruteForceBudget& budget) {
  std::vector<Clause> hard;
  std::vector<std::vector<Clause>> elems;
  if (inst.groups) {
    elems.resize(inst.groups->numGroups);
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
      std::uint32_t g = inst.groups->groupOf[i];
      if (g == 0)
        hard.push_back(f.clauses[i]);
      else
        elems[g - 1].push_back(f.clauses[i]);
    }
  } else {
    for (const Clause& c : f.clauses) elems.push_back({c});
  }
  const std::size_t m = elems.size();
  checkElements(m, budget);
  const Mask full = m == 0 ? 0 : static_cast<Mask>((std::uint64_t{1} << m) - 1);
  std::vector<char> sat(std::size_t{1} << m, 0);
  for (Mask a = 0; a < (Mask{1} << n); ++a) {
    bool ok = std::all_of(hard.begin(), hard.end(), [&](const Clause& c) { return clauseTrue(c, a); });
    if (!ok) continue;
    Mask s = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (std::all_of(elems[i].begin(), elems[i].end(), [&](const Clause& c) { return clauseTrue(c, a); }))
        s |= Mask{1} << i;
    sat[s] = 1;
  }
  closeDown(sat, m);

  BruteResult r;
  if (kind == K::FMUS) {
    if (sat[full]) {
      r.illPosed = true;
      return r;
    }
    std::vector<char> unsat(sat.size());
    for (std::size_t s = 0; s < sat.size(); ++s) unsat[s] = !sat[s];
    for (Mask s : minimalGood(unsat, m)) r.answers.push_back(indicesOf(s));
  } else {
    if (sat[full] || !sat[0]) {
      r.illPosed = true;
      return r;
    }
    // Correction sets C: F \ C satisfiable.
    std::vector<char> corr(sat.size());
    for (Mask c = 0; c < sat.size(); ++c) corr[c] = sat[full ^ c];
    for (Mask c : minimalGood(corr, m))
      r.answers.push_back(indicesOf(kind == K::FMCS ? c : (full ^ c)));
  }
  canonicalize(r.answers);
  return r;
}

/// Minimal complement sets: C such that good[full ^ C], reported either
/// as C (`complement` false) or as full ^ C.
std::vector<std::vector<int>> minimalCorrections(const std::vector<char>& good, std::size_t m,
                                                 Mask full, bool complement) {
  std::vector<char> corr(good.size());
  for (Mask c = 0; c < good.size(); ++c) corr[c] = good[full ^ c];
  std::vector<std::vector<int>> out;
  for (Mask c : minimalGood(corr, m)) out.push_back(indicesOf(complement ? (full ^ c) : c));
  return out;
}

/// Smallest C with good[full ^ C]; fills answers and optimum.
void smallestCorrections(BruteResult& r, const std::vector<char>& good, Mask full) {
  int best = -1;
  for (Mask c = 0; c < good.size(); ++c) {
    if (!good[full ^ c]) continue;
    int size = std::popcount(c);
    if (best < 0 || size < best) {
      best = size;
      r.answers.clear();
    }
    if (size == best) r.answers.push_back(indicesOf(c));
  }
  r.optimum = best;
}

std::vector<std::vector<int>> extensions(const std::vector<Lit>& unit, std::uint32_t n,
                                         const std::vector<char>& table,
                                         auto&& replacedValue, const BruteForceBudget& budget) {
  std::vector<std::uint32_t> absent;
  for (std::uint32_t v = 1; v <= n; ++v)
    if (std::none_of(unit.begin(), unit.end(), [&](Lit l) { return l.var().id == v; }))
      absent.push_back(v);
  std::uint64_t combos = 1;
  for (std::size_t i = 0; i < absent.size(); ++i) combos *= 3;
  if (combos * table.size() > budget.maxSubsets)
    throw BudgetError("extension enumeration exceeds the budget");

  struct Ext {
    Mask pos = 0, neg = 0;
  };
  std::vector<Ext> valid;
  for (std::uint64_t code = 0; code < combos; ++code) {
    Ext e;
    std::uint64_t c = code;
    for (std::uint32_t v : absent) {
      std::uint64_t d = c % 3;
      c /= 3;
      if (d == 1) e.pos |= Mask{1} << (v - 1);
      if (d == 2) e.neg |= Mask{1} << (v - 1);
    }
    bool equivalent = true;
    for (Mask a = 0; a < table.size() && equivalent; ++a)
      equivalent = static_cast<bool>(replacedValue(a, e.pos, e.neg)) == static_cast<bool>(table[a]);
    if (equivalent) valid.push_back(e);
  }
  std::vector<std::vector<int>> out;
  for (const Ext& e : valid) {
    bool maximal = true;
    for (const Ext& o : valid) {
      bool superset = (o.pos & e.pos) == e.pos && (o.neg & e.neg) == e.neg &&
                      (o.pos != e.pos || o.neg != e.neg);
      if (superset) {
        maximal = false;
        break;
      }
    }
    if (!maximal) continue;
    std::vector<int> v;
    for (Lit l : unit) v.push_back(l.toDimacs());
    for (int b = 0; b < 32; ++b) {
      if ((e.pos >> b) & 1u) v.push_back(b + 1);
      if ((e.neg >> b) & 1u) v.push_back(-(b + 1));
    }
    sortLits(v);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::vector<Assignment> enumerateModels(const Formula& f, std::uint32_t numVars,
                                        const BruteForceBudget& budget) {
  checkVars(numVars, budget);
  std::vector<char> t = truthTable(f, numVars);
  std::vector<Mask> models;
  for (Mask a = 0; a < t.size(); ++a)
    if (t[a]) models.push_back(a);
  // x1 is the most significant position of the lexicographic order.
  auto key = [&](Mask a) {
    Mask k = 0;
    for (std::uint32_t v = 0; v < numVars; ++v)
      if ((a >> v) & 1u) k |= Mask{1} << (numVars - 1 - v);
    return k;
  };
  std::sort(models.begin(), models.end(), [&](Mask a, Mask b) { return key(a) < key(b); });
  std::vector<Assignment> out;
  for (Mask a : models) {
    Assignment as(numVars);
    for (std::uint32_t v = 1; v <= numVars; ++v) as.assign(Var{v}, (a >> (v - 1)) & 1u);
    out.push_back(std::move(as));
  }
  return out;
}

MonotonicityReport checkMonotone(MonotonePredicate& p, std::size_t samples, std::uint64_t seed,
                                 const BruteForceBudget& budget) {
  const std::size_t n = p.size();
  checkElements(n, budget);
  std::mt19937_64 rng(seed);
  const std::uint64_t full = n == 0 ? 0 : ((std::uint64_t{1} << n) - 1);
  std::unordered_map<std::uint64_t, bool> memo;
  auto toSet = [&](std::uint64_t s) {
    ElementSet w;
    for (std::size_t i = 0; i < n; ++i)
      if ((s >> i) & 1u) w.push_back(i);
    return w;
  };
  auto eval = [&](std::uint64_t s) {
    auto it = memo.find(s);
    if (it != memo.end()) return it->second;
    bool v = p.test(toSet(s)).holds;
    memo.emplace(s, v);
    return v;
  };
  MonotonicityReport rep;
  for (std::size_t i = 0; i < samples; ++i) {
    std::uint64_t w1 = rng() & full;
    std::uint64_t w0 = w1 & rng();
    ++rep.samples;
    if (eval(w0) && !eval(w1)) {
      ++rep.violations;
      if (!rep.counterexample) rep.counterexample = {toSet(w0), toSet(w1)};
    }
  }
  rep.distinctTests = memo.size();
  return rep;
}

std::string checkSubsetMinimal(MonotonePredicate& p, const ElementSet& m,
                               const BruteForceBudget& budget) {
  checkElements(m.size(), budget);
  if (!p.test(m).holds) return "predicate is false on M";
  const Mask full = static_cast<Mask>((std::uint64_t{1} << m.size()) - 1);
  for (Mask s = 0; s < full; ++s) {
    ElementSet w;
    for (std::size_t i = 0; i < m.size(); ++i)
      if ((s >> i) & 1u) w.push_back(m[i]);
    if (p.test(w).holds) return "a strict subset of M satisfies the predicate";
  }
  return {};
}

BruteResult bruteSolve(ProblemKind kind, const ProblemInstance& inst,
                       const BruteForceBudget& budget) {
  std::uint32_t n = universeOf(inst);
  if (kind == K::FMnES && inst.target) n = std::max(n, maxVarId(*inst.target));
  if (kind == K::FMxES && inst.candidates) n = std::max(n, inst.candidates->numVars);
  checkVars(n, budget);
  const Mask numAssignments = Mask{1} << n;
  BruteResult r;

  switch (kind) {
    case K::FMUS:
    case K::FMCS:
    case K::FMSS:
      return bruteGroups(kind, inst, requireCnf(inst, kind), n, budget);

    case K::FMES:
    case K::FMDS:
    case K::FMNS:
    case K::FMCFS:
    case K::FMFS:
    case K::FSMCS:
    case K::FSMDS:
    case K::FSMCFS: {
      const CnfFormula& f = requireCnf(inst, kind);
      ClauseTable t = clauseTable(f.clauses, n, budget);
      std::vector<char> sat = closedMarks(t, [&](Mask a) { return std::optional<Mask>(t.satMask[a]); });
      std::vector<char> notEquiv = closedMarks(t, [&](Mask a) {
        return t.satMask[a] != t.full ? std::optional<Mask>(t.satMask[a]) : std::nullopt;
      });
      std::vector<char> fals =
          closedMarks(t, [&](Mask a) { return std::optional<Mask>(~t.satMask[a] & t.full); });
      if ((kind == K::FMDS || kind == K::FMNS || kind == K::FSMDS) && !notEquiv[0]) {
        r.illPosed = true;
        return r;
      }
      if (kind == K::FMES) {
        std::vector<char> equiv(notEquiv.size());
        for (std::size_t s = 0; s < equiv.size(); ++s) equiv[s] = !notEquiv[s];
        for (Mask s : minimalGood(equiv, t.m)) r.answers.push_back(indicesOf(s));
      } else if (kind == K::FMDS || kind == K::FMNS) {
        r.answers = minimalCorrections(notEquiv, t.m, t.full, kind == K::FMNS);
      } else if (kind == K::FMCFS || kind == K::FMFS) {
        r.answers = minimalCorrections(fals, t.m, t.full, kind == K::FMFS);
      } else if (kind == K::FSMCS) {
        smallestCorrections(r, sat, t.full);
      } else if (kind == K::FSMDS) {
        smallestCorrections(r, notEquiv, t.full);
      } else {
        smallestCorrections(r, fals, t.full);
      }
      break;
    }

    case K::FMnM:
    case K::FMxM:
    case K::FSMnM: {
      std::vector<char> table = truthTable(mainFormula(inst), n);
      if (std::none_of(table.begin(), table.end(), [](char c) { return c; })) {
        r.illPosed = true;
        return r;
      }
      if (kind == K::FSMnM) {
        int best = n + 1;
        for (Mask a = 0; a < numAssignments; ++a)
          if (table[a]) best = std::min(best, std::popcount(a));
        for (Mask a = 0; a < numAssignments; ++a)
          if (table[a] && std::popcount(a) == best) r.answers.push_back(indicesOf(a));
        r.optimum = best;
      } else if (kind == K::FMnM) {
        std::vector<char> below = table;  // a model ⊆ S exists
        closeUp(below, n);
        for (Mask a = 0; a < numAssignments; ++a) {
          if (!table[a]) continue;
          bool minimal = true;
          for (std::uint32_t b = 0; b < n && minimal; ++b)
            if (((a >> b) & 1u) && below[a ^ (Mask{1} << b)]) minimal = false;
          if (minimal) r.answers.push_back(indicesOf(a));
        }
      } else {
        std::vector<char> above = table;  // a model ⊇ S exists
        closeDown(above, n);
        for (Mask a = 0; a < numAssignments; ++a) {
          if (!table[a]) continue;
          bool maximal = true;
          for (std::uint32_t b = 0; b < n && maximal; ++b)
            if (!((a >> b) & 1u) && above[a | (Mask{1} << b)]) maximal = false;
          if (maximal) r.answers.push_back(indicesOf(a));
        }
      }
      break;
    }

    case K::FPIt:
    case K::FPIc: {
      const bool isTerm = kind == K::FPIt;
      if (isTerm ? !inst.term : !inst.clause) throw UsageError("missing reference unit");
      const std::vector<Lit>& lits = isTerm ? inst.term->lits() : inst.clause->lits();
      checkElements(lits.size(), budget);
      std::vector<char> table = truthTable(mainFormula(inst), n);
      const std::size_t k = lits.size();
      // Term T ⊭ F iff some non-model makes all of T true. Clause C is not
      // entailed iff some model makes all of C false.
      std::vector<char> bad(std::size_t{1} << k, 0);
      for (Mask a = 0; a < numAssignments; ++a) {
        if (static_cast<bool>(table[a]) == isTerm) continue;
        Mask s = 0;
        for (std::size_t i = 0; i < k; ++i)
          if (litTrue(lits[i], a) == isTerm) s |= Mask{1} << i;
        bad[s] = 1;
      }
      closeDown(bad, k);
      const Mask full = static_cast<Mask>((std::uint64_t{1} << k) - 1);
      if (bad[full]) {
        r.illPosed = true;
        return r;
      }
      std::vector<char> good(bad.size());
      for (std::size_t s = 0; s < good.size(); ++s) good[s] = !bad[s];
      for (Mask s : minimalGood(good, k)) {
        std::vector<int> v;
        for (std::size_t i = 0; i < k; ++i)
          if ((s >> i) & 1u) v.push_back(lits[i].toDimacs());
        sortLits(v);
        r.answers.push_back(std::move(v));
      }
      break;
    }

    case K::FLEIt: {
      const auto* f = std::get_if<DnfFormula>(&inst.formula);
      if (!f) throw UsageError("FLEIt needs a DNF formula");
      if (!inst.unitIndex || *inst.unitIndex >= f->terms.size()) {
        r.illPosed = true;
        return r;
      }
      const std::size_t k = *inst.unitIndex;
      std::vector<char> table = truthTable(fromDnf(*f), n);
      std::vector<char> others(numAssignments, 0);
      for (Mask a = 0; a < numAssignments; ++a)
        for (std::size_t i = 0; i < f->terms.size(); ++i)
          if (i != k && termTrue(f->terms[i], a)) others[a] = 1;
      const Term& tk = f->terms[k];
      r.answers = extensions(tk.lits(), n, table, [&](Mask a, Mask pos, Mask neg) {
        return others[a] || (termTrue(tk, a) && (a & pos) == pos && (a & neg) == 0);
      }, budget);
      break;
    }

    case K::FLEIc: {
      const CnfFormula& f = requireCnf(inst, kind);
      if (!inst.unitIndex || *inst.unitIndex >= f.clauses.size()) {
        r.illPosed = true;
        return r;
      }
      const std::size_t k = *inst.unitIndex;
      std::vector<char> table = truthTable(fromCnf(f), n);
      std::vector<char> others(numAssignments, 1);
      for (Mask a = 0; a < numAssignments; ++a)
        for (std::size_t i = 0; i < f.clauses.size(); ++i)
          if (i != k && !clauseTrue(f.clauses[i], a)) others[a] = 0;
      const Clause& ck = f.clauses[k];
      r.answers = extensions(ck.lits(), n, table, [&](Mask a, Mask pos, Mask neg) {
        return others[a] && (clauseTrue(ck, a) || (a & pos) != 0 || (~a & neg) != 0);
      }, budget);
      break;
    }

    case K::FMnES: {
      const CnfFormula& j = requireCnf(inst, kind);
      if (!inst.target) throw UsageError("missing target formula");
      ClauseTable t = clauseTable(j.clauses, n, budget);
      std::vector<char> target = truthTable(*inst.target, n);
      std::vector<char> notEnt = closedMarks(t, [&](Mask a) {
        return target[a] ? std::nullopt : std::optional<Mask>(t.satMask[a]);
      });
      if (notEnt[t.full]) {
        r.illPosed = true;
        return r;
      }
      std::vector<char> ent(notEnt.size());
      for (std::size_t s = 0; s < ent.size(); ++s) ent[s] = !notEnt[s];
      for (Mask s : minimalGood(ent, t.m)) r.answers.push_back(indicesOf(s));
      break;
    }

    case K::FMxES: {
      if (!inst.candidates) throw UsageError("missing candidate clauses");
      checkElements(inst.candidates->clauses.size(), budget);
      std::vector<char> table = truthTable(mainFormula(inst), n);
      if (std::none_of(table.begin(), table.end(), [](char c) { return c; })) {
        r.illPosed = true;
        return r;
      }
      std::vector<int> entailed;
      const auto& cs = inst.candidates->clauses;
      for (std::size_t i = 0; i < cs.size(); ++i) {
        bool all = true;
        for (Mask a = 0; a < numAssignments && all; ++a)
          if (table[a] && !clauseTrue(cs[i], a)) all = false;
        if (all) entailed.push_back(static_cast<int>(i + 1));
      }
      r.answers.push_back(std::move(entailed));
      break;
    }

    case K::FBBr:
    case K::FBB: {
      Formula f = mainFormula(inst);
      std::vector<char> table = truthTable(f, n);
      if (std::none_of(table.begin(), table.end(), [](char c) { return c; })) {
        r.illPosed = true;
        return r;
      }
      if (kind == K::FBBr && inst.model) {
        bool ok = false;
        try {
          ok = evaluate(f, *inst.model);
        } catch (const EvaluationError&) {
          ok = false;
        }
        if (!ok) {
          r.illPosed = true;
          return r;
        }
      }
      Mask always = ~Mask{0}, never = ~Mask{0};
      for (Mask a = 0; a < numAssignments; ++a) {
        if (!table[a]) continue;
        always &= a;
        never &= ~a;
      }
      std::vector<int> v;
      for (std::uint32_t b = 0; b < n; ++b) {
        if ((always >> b) & 1u) v.push_back(static_cast<int>(b + 1));
        if ((never >> b) & 1u) v.push_back(-static_cast<int>(b + 1));
      }
      if (kind == K::FBBr && inst.model) {
        // Only variables assigned by V can be reported.
        std::erase_if(v, [&](int l) { return !inst.model->value(Var{static_cast<std::uint32_t>(std::abs(l))}); });
      }
      sortLits(v);
      r.answers.push_back(std::move(v));
      break;
    }

    case K::FVInd: {
      std::vector<char> table = truthTable(mainFormula(inst), n);
      std::vector<int> v;
      for (std::uint32_t b = 0; b < n; ++b) {
        bool independent = true;
        for (Mask a = 0; a < numAssignments && independent; ++a)
          if (table[a] != table[a ^ (Mask{1} << b)]) independent = false;
        if (independent) v.push_back(static_cast<int>(b + 1));
      }
      r.answers.push_back(std::move(v));
      break;
    }

    case K::FAutL:
    case K::FAutB: {
      const CnfFormula& f = requireCnf(inst, kind);
      std::uint64_t combos = 1;
      for (std::uint32_t i = 0; i < n; ++i) combos *= 3;
      if (combos * std::max<std::size_t>(f.clauses.size(), 1) > budget.maxSubsets)
        throw BudgetError("autarky enumeration exceeds the budget");
      std::vector<char> table = truthTable(fromCnf(f), n);
      if (std::any_of(table.begin(), table.end(), [](char c) { return c; })) {
        r.illPosed = true;
        return r;
      }
      Mask united = 0;
      for (std::uint64_t code = 0; code < combos; ++code) {
        Mask dom = 0, val = 0;
        std::uint64_t c = code;
        for (std::uint32_t b = 0; b < n; ++b) {
          std::uint64_t d = c % 3;
          c /= 3;
          if (d != 0) dom |= Mask{1} << b;
          if (d == 1) val |= Mask{1} << b;
        }
        if (dom == 0 || (dom & ~united) == 0) continue;
        bool autark = true;
        for (const Clause& cl : f.clauses) {
          bool touches = false, satisfied = false;
          for (Lit l : cl) {
            Mask bit = Mask{1} << (l.var().id - 1);
            if (!(dom & bit)) continue;
            touches = true;
            if (((val & bit) != 0) != l.isNegative()) satisfied = true;
          }
          if (touches && !satisfied) {
            autark = false;
            break;
          }
        }
        if (autark) united |= dom;
      }
      r.answers.push_back(indicesOf(united));
      break;
    }
  }
  canonicalize(r.answers);
  return r;
}

CheckResult checkAnswer(const ProblemAnswer& answer, const BruteResult& expected) {
  if (expected.illPosed) return {false, "the instance violates the precondition, yet an answer was returned"};
  if (expected.optimum && answer.optimum != expected.optimum) {
    return {false, "optimum " + (answer.optimum ? std::to_string(*answer.optimum) : "none") +
                       " differs from the brute-force optimum " + std::to_string(*expected.optimum)};
  }
  if (std::find(expected.answers.begin(), expected.answers.end(), answer.values) ==
      expected.answers.end())
    return {false, "answer is not among the " + std::to_string(expected.answers.size()) +
                       " brute-force answers"};
  return {true, {}};
}

CheckResult checkAnswer(const ProblemAnswer& answer, const ProblemInstance& inst,
                        const BruteForceBudget& budget) {
  return checkAnswer(answer, bruteSolve(answer.kind, inst, budget));
}

bool allIntersect(const std::vector<std::vector<int>>& a, const std::vector<std::vector<int>>& b) {
  for (const auto& x : a)
    for (const auto& y : b)
      if (std::none_of(x.begin(), x.end(),
                       [&](int v) { return std::find(y.begin(), y.end(), v) != y.end(); }))
        return false;
  return true;
}

std::string tapLine(std::size_t number, bool ok, const std::string& description) {
  return std::string(ok ? "ok " : "not ok ") + std::to_string(number) + " - " + description;
}

}  // namespace msmp
