// SPDX-License-Identifier: Apache-2.0

// Embedded CDCL solver. Literal codes follow msmp::Lit (2*var + sign), so
// per-literal arrays are indexed directly by Lit::code().

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "msmp/error.hpp"
#include "msmp/oracle.hpp"

namespace msmp {

namespace {

using LitCode = std::uint32_t;
using CRef = std::uint32_t;
constexpr CRef kNoReason = UINT32_MAX;

inline std::uint32_t varOf(LitCode l) { return l >> 1; }
inline LitCode neg(LitCode l) { return l ^ 1u; }

struct ClauseData {
  std::vector<LitCode> lits;
  bool learnt = false;
  bool deleted = false;
  double activity = 0.0;
};

struct Watcher {
  CRef cref;
  LitCode blocker;
};

/// Finite Luby sequence value for index x (1,1,2,1,1,2,4,...) scaled by y.
double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

}  // namespace

class CdclSolver::Impl {
 public:
  explicit Impl(SolverOptions opts) : opts_(opts), rng_(opts.seed) {
    reserveVars(0);
  }

  std::uint32_t numVars() const { return numVars_; }

  void reserveVars(std::uint32_t n) {
    if (n < numVars_ && !assigns_.empty()) return;
    std::uint32_t old = numVars_;
    numVars_ = std::max(numVars_, n);
    std::size_t slots = numVars_ + 1;
    assigns_.resize(slots, 0);
    level_.resize(slots, 0);
    reason_.resize(slots, kNoReason);
    activity_.resize(slots, 0.0);
    polarity_.resize(slots, 1);  // 1 = prefer negative
    seen_.resize(slots, 0);
    heapIndex_.resize(slots, -1);
    watches_.resize(2 * slots);
    for (std::uint32_t v = old + 1; v <= numVars_; ++v) heapInsert(v);
  }

  void addClause(std::span<const Lit> input) {
    if (!ok_) return;
    std::vector<LitCode> lits;
    lits.reserve(input.size());
    std::uint32_t maxVar = 0;
    for (Lit l : input) {
      if (l.var().id == 0) throw UsageError("variable id 0 in clause");
      lits.push_back(l.code());
      maxVar = std::max(maxVar, l.var().id);
    }
    reserveVars(maxVar);
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    std::size_t j = 0;
    for (std::size_t i = 0; i < lits.size(); ++i) {
      if (i + 1 < lits.size() && lits[i + 1] == neg(lits[i])) return;  // tautology
      int v = value(lits[i]);
      if (v > 0) return;  // satisfied at level 0
      if (v == 0) lits[j++] = lits[i];
    }
    lits.resize(j);
    if (lits.empty()) {
      ok_ = false;
      return;
    }
    if (lits.size() == 1) {
      enqueue(lits[0], kNoReason);
      if (propagate() != kNoReason) ok_ = false;
      return;
    }
    CRef cr = allocClause(std::move(lits), false);
    attach(cr);
  }

  SolveOutcome solve(std::span<const Lit> assumptions) {
    SolveOutcome out;
    if (!ok_) return out;
    assumptions_.clear();
    std::uint32_t maxVar = 0;
    for (Lit l : assumptions) {
      if (l.var().id == 0) throw UsageError("variable id 0 in assumptions");
      assumptions_.push_back(l.code());
      maxVar = std::max(maxVar, l.var().id);
    }
    reserveVars(maxVar);
    if (propagate() != kNoReason) {
      ok_ = false;
      return out;
    }
    simplifyAtRoot();
    if (maxLearnts_ == 0) maxLearnts_ = std::max<double>(clauses_.size() / 3.0, 100.0);

    int status = 0;  // 1 sat, -1 unsat
    for (int restart = 0; status == 0; ++restart) {
      double budget = luby(2.0, restart) * opts_.restartBase;
      status = search(static_cast<std::int64_t>(budget));
    }
    if (status > 0) {
      Assignment model(numVars_);
      for (std::uint32_t v = 1; v <= numVars_; ++v) model.assign(Var{v}, assigns_[v] > 0);
      out.status = SolveStatus::Sat;
      out.witness = std::move(model);
    }
    cancelUntil(0);
    return out;
  }

  std::uint64_t conflicts() const { return conflicts_; }

 private:
  // --- assignment -----------------------------------------------------------

  int value(LitCode l) const {
    int v = assigns_[varOf(l)];
    return (l & 1u) ? -v : v;
  }

  int decisionLevel() const { return static_cast<int>(trailLim_.size()); }

  void enqueue(LitCode l, CRef from) {
    std::uint32_t v = varOf(l);
    assigns_[v] = (l & 1u) ? -1 : 1;
    level_[v] = decisionLevel();
    reason_[v] = from;
    trail_.push_back(l);
  }

  void cancelUntil(int lvl) {
    if (decisionLevel() <= lvl) return;
    for (std::size_t c = trail_.size(); c-- > trailLim_[lvl];) {
      std::uint32_t v = varOf(trail_[c]);
      polarity_[v] = trail_[c] & 1u;
      assigns_[v] = 0;
      reason_[v] = kNoReason;
      if (heapIndex_[v] < 0) heapInsert(v);
    }
    trail_.resize(trailLim_[lvl]);
    trailLim_.resize(lvl);
    qhead_ = trail_.size();
  }

  // --- clauses ---------------------------------------------------------------

  CRef allocClause(std::vector<LitCode> lits, bool learnt) {
    ClauseData c;
    c.lits = std::move(lits);
    c.learnt = learnt;
    clauses_.push_back(std::move(c));
    CRef cr = static_cast<CRef>(clauses_.size() - 1);
    if (learnt) learnts_.push_back(cr);
    return cr;
  }

  void attach(CRef cr) {
    const auto& c = clauses_[cr].lits;
    watches_[neg(c[0])].push_back({cr, c[1]});
    watches_[neg(c[1])].push_back({cr, c[0]});
  }

  bool locked(CRef cr) const {
    const auto& c = clauses_[cr].lits;
    std::uint32_t v = varOf(c[0]);
    return reason_[v] == cr && value(c[0]) > 0;
  }

  CRef propagate() {
    CRef conflict = kNoReason;
    while (qhead_ < trail_.size()) {
      LitCode p = trail_[qhead_++];
      LitCode falseLit = neg(p);
      auto& ws = watches_[p];
      std::size_t i = 0, j = 0;
      while (i < ws.size()) {
        Watcher w = ws[i];
        if (value(w.blocker) > 0) {
          ws[j++] = ws[i++];
          continue;
        }
        ClauseData& cd = clauses_[w.cref];
        if (cd.deleted) {
          ++i;
          continue;
        }
        auto& c = cd.lits;
        if (c[0] == falseLit) std::swap(c[0], c[1]);
        ++i;
        LitCode first = c[0];
        Watcher nw{w.cref, first};
        if (first != w.blocker && value(first) > 0) {
          ws[j++] = nw;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (value(c[k]) >= 0) {
            c[1] = c[k];
            c[k] = falseLit;
            watches_[neg(c[1])].push_back(nw);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = nw;
        if (value(first) < 0) {
          conflict = w.cref;
          qhead_ = trail_.size();
          while (i < ws.size()) ws[j++] = ws[i++];
        } else {
          enqueue(first, w.cref);
        }
      }
      ws.resize(j);
      if (conflict != kNoReason) break;
    }
    return conflict;
  }

  /// Drops clauses satisfied at the root (e.g. retired activation clauses).
  void simplifyAtRoot() {
    if (trail_.size() == rootSimplifiedAt_) return;
    rootSimplifiedAt_ = trail_.size();
    for (auto& c : clauses_) {
      if (c.deleted) continue;
      for (LitCode l : c.lits) {
        if (value(l) > 0) {
          c.deleted = true;
          break;
        }
      }
    }
    learnts_.erase(std::remove_if(learnts_.begin(), learnts_.end(),
                                  [&](CRef cr) { return clauses_[cr].deleted; }),
                   learnts_.end());
  }

  // --- heuristics ------------------------------------------------------------

  bool heapLess(std::uint32_t a, std::uint32_t b) const {
    if (activity_[a] != activity_[b]) return activity_[a] > activity_[b];
    return a < b;
  }

  void heapUp(std::size_t i) {
    std::uint32_t v = heap_[i];
    while (i > 0) {
      std::size_t parent = (i - 1) >> 1;
      if (!heapLess(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      heapIndex_[heap_[i]] = static_cast<int>(i);
      i = parent;
    }
    heap_[i] = v;
    heapIndex_[v] = static_cast<int>(i);
  }

  void heapDown(std::size_t i) {
    std::uint32_t v = heap_[i];
    for (;;) {
      std::size_t child = 2 * i + 1;
      if (child >= heap_.size()) break;
      if (child + 1 < heap_.size() && heapLess(heap_[child + 1], heap_[child])) ++child;
      if (!heapLess(heap_[child], v)) break;
      heap_[i] = heap_[child];
      heapIndex_[heap_[i]] = static_cast<int>(i);
      i = child;
    }
    heap_[i] = v;
    heapIndex_[v] = static_cast<int>(i);
  }

  void heapInsert(std::uint32_t v) {
    if (v == 0) return;
    heap_.push_back(v);
    heapUp(heap_.size() - 1);
  }

  std::uint32_t heapPop() {
    std::uint32_t top = heap_.front();
    heapIndex_[top] = -1;
    std::uint32_t last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      heap_[0] = last;
      heapIndex_[last] = 0;
      heapDown(0);
    }
    return top;
  }

  void bumpVar(std::uint32_t v) {
    activity_[v] += varInc_;
    if (activity_[v] > 1e100) {
      for (std::uint32_t u = 1; u <= numVars_; ++u) activity_[u] *= 1e-100;
      varInc_ *= 1e-100;
    }
    if (heapIndex_[v] >= 0) heapUp(static_cast<std::size_t>(heapIndex_[v]));
  }

  void bumpClause(ClauseData& c) {
    c.activity += claInc_;
    if (c.activity > 1e20) {
      for (CRef cr : learnts_) clauses_[cr].activity *= 1e-20;
      claInc_ *= 1e-20;
    }
  }

  LitCode pickBranch() {
    std::uint32_t next = 0;
    if (opts_.randomDecisionFreq > 0.0 && !heap_.empty()) {
      std::uniform_real_distribution<double> coin(0.0, 1.0);
      if (coin(rng_) < opts_.randomDecisionFreq) {
        std::uniform_int_distribution<std::size_t> pick(0, heap_.size() - 1);
        std::uint32_t v = heap_[pick(rng_)];
        if (assigns_[v] == 0) next = v;
      }
    }
    while (next == 0 || assigns_[next] != 0) {
      if (heap_.empty()) return UINT32_MAX;
      next = heapPop();
    }
    return 2 * next + polarity_[next];
  }

  // --- conflict analysis -------------------------------------------------------

  void analyze(CRef conflict, std::vector<LitCode>& learnt, int& backtrackLevel) {
    learnt.clear();
    learnt.push_back(0);
    int pathCount = 0;
    LitCode p = UINT32_MAX;
    std::size_t index = trail_.size();
    do {
      ClauseData& c = clauses_[conflict];
      if (c.learnt) bumpClause(c);
      for (std::size_t k = (p == UINT32_MAX ? 0 : 1); k < c.lits.size(); ++k) {
        LitCode q = c.lits[k];
        std::uint32_t v = varOf(q);
        if (!seen_[v] && level_[v] > 0) {
          bumpVar(v);
          seen_[v] = 1;
          if (level_[v] >= decisionLevel()) {
            ++pathCount;
          } else {
            learnt.push_back(q);
          }
        }
      }
      while (!seen_[varOf(trail_[--index])]) {
      }
      p = trail_[index];
      conflict = reason_[varOf(p)];
      seen_[varOf(p)] = 0;
      --pathCount;
    } while (pathCount > 0);
    learnt[0] = neg(p);

    // Local minimization: drop literals implied by other learnt literals.
    toClear_.assign(learnt.begin(), learnt.end());
    std::size_t j = 1;
    for (std::size_t i = 1; i < learnt.size(); ++i) {
      CRef r = reason_[varOf(learnt[i])];
      bool keep = true;
      if (r != kNoReason) {
        keep = false;
        const auto& rc = clauses_[r].lits;
        for (std::size_t k = 1; k < rc.size(); ++k) {
          std::uint32_t v = varOf(rc[k]);
          if (!seen_[v] && level_[v] > 0) {
            keep = true;
            break;
          }
        }
      }
      if (keep) learnt[j++] = learnt[i];
    }
    learnt.resize(j);

    if (learnt.size() == 1) {
      backtrackLevel = 0;
    } else {
      std::size_t maxI = 1;
      for (std::size_t i = 2; i < learnt.size(); ++i)
        if (level_[varOf(learnt[i])] > level_[varOf(learnt[maxI])]) maxI = i;
      std::swap(learnt[1], learnt[maxI]);
      backtrackLevel = level_[varOf(learnt[1])];
    }
    for (LitCode l : toClear_) seen_[varOf(l)] = 0;
  }

  void reduceLearnts() {
    std::vector<CRef> sorted = learnts_;
    std::sort(sorted.begin(), sorted.end(), [&](CRef a, CRef b) {
      const auto& ca = clauses_[a];
      const auto& cb = clauses_[b];
      if (ca.lits.size() <= 2 || cb.lits.size() <= 2) return ca.lits.size() > cb.lits.size();
      if (ca.activity != cb.activity) return ca.activity < cb.activity;
      return a < b;
    });
    std::size_t half = sorted.size() / 2;
    for (std::size_t i = 0; i < half; ++i) {
      ClauseData& c = clauses_[sorted[i]];
      if (c.lits.size() > 2 && !locked(sorted[i])) c.deleted = true;
    }
    learnts_.erase(std::remove_if(learnts_.begin(), learnts_.end(),
                                  [&](CRef cr) { return clauses_[cr].deleted; }),
                   learnts_.end());
  }

  /// 1 = sat, -1 = unsat, 0 = restart.
  int search(std::int64_t conflictBudget) {
    std::int64_t localConflicts = 0;
    std::vector<LitCode> learnt;
    for (;;) {
      CRef conflict = propagate();
      if (conflict != kNoReason) {
        ++conflicts_;
        ++localConflicts;
        if (decisionLevel() == 0) {
          ok_ = false;
          return -1;
        }
        int btLevel = 0;
        analyze(conflict, learnt, btLevel);
        cancelUntil(btLevel);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          CRef cr = allocClause(learnt, true);
          attach(cr);
          bumpClause(clauses_[cr]);
          enqueue(learnt[0], cr);
        }
        varInc_ /= 0.95;
        claInc_ /= 0.999;
        continue;
      }

      if (localConflicts >= conflictBudget) {
        cancelUntil(0);
        return 0;
      }
      if (static_cast<double>(learnts_.size()) >= maxLearnts_ + trail_.size()) {
        reduceLearnts();
        maxLearnts_ *= 1.1;
      }

      LitCode next = UINT32_MAX;
      while (decisionLevel() < static_cast<int>(assumptions_.size())) {
        LitCode a = assumptions_[decisionLevel()];
        int v = value(a);
        if (v > 0) {
          trailLim_.push_back(trail_.size());
        } else if (v < 0) {
          return -1;
        } else {
          next = a;
          break;
        }
      }
      if (next == UINT32_MAX) {
        next = pickBranch();
        if (next == UINT32_MAX) return 1;
      }
      trailLim_.push_back(trail_.size());
      enqueue(next, kNoReason);
    }
  }

  SolverOptions opts_;
  std::mt19937_64 rng_;
  bool ok_ = true;
  std::uint32_t numVars_ = 0;

  std::vector<std::int8_t> assigns_;
  std::vector<int> level_;
  std::vector<CRef> reason_;
  std::vector<double> activity_;
  std::vector<std::uint8_t> polarity_;
  std::vector<std::uint8_t> seen_;
  std::vector<int> heapIndex_;
  std::vector<std::uint32_t> heap_;
  std::vector<std::vector<Watcher>> watches_;

  std::vector<ClauseData> clauses_;
  std::vector<CRef> learnts_;
  std::vector<LitCode> trail_;
  std::vector<std::size_t> trailLim_;
  std::size_t qhead_ = 0;
  std::vector<LitCode> assumptions_;
  std::vector<LitCode> toClear_;

  double varInc_ = 1.0;
  double claInc_ = 1.0;
  double maxLearnts_ = 0.0;
  std::size_t rootSimplifiedAt_ = 0;
  std::uint64_t conflicts_ = 0;
};

CdclSolver::CdclSolver(SolverOptions options) : impl_(std::make_unique<Impl>(options)) {}
CdclSolver::~CdclSolver() = default;
CdclSolver::CdclSolver(CdclSolver&&) noexcept = default;
CdclSolver& CdclSolver::operator=(CdclSolver&&) noexcept = default;

void CdclSolver::reserveVars(std::uint32_t n) { impl_->reserveVars(n); }
std::uint32_t CdclSolver::numVars() const { return impl_->numVars(); }
void CdclSolver::addClause(std::span<const Lit> lits) { impl_->addClause(lits); }
std::uint64_t CdclSolver::conflicts() const { return impl_->conflicts(); }

SolveOutcome CdclSolver::doSolve(std::span<const Lit> assumptions) {
  return impl_->solve(assumptions);
}

}  // namespace msmp
