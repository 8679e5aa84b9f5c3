// SPDX-License-Identifier: Apache-2.0

#include "msmp/cardenc.hpp"

#include <algorithm>

#include "msmp/error.hpp"

namespace msmp {

namespace {

void push(std::vector<Clause>& out, std::initializer_list<Lit> lits) {
  if (auto c = Clause::tryMake(std::vector<Lit>(lits))) out.push_back(*std::move(c));
}

}  // namespace

CounterEncoding encodeCounter(std::span<const Lit> lits, std::uint32_t maxBound,
                              VarAllocator& vars) {
  const std::size_t n = lits.size();
  if (maxBound > n) throw UsageError("counter bound exceeds the number of literals");
  CounterEncoding enc;
  if (n == 0 || maxBound == 0) return enc;

  // s[i][j] (1-based j) means: at least j of the first i+1 literals are true.
  std::vector<std::vector<Lit>> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t width = std::min<std::size_t>(i + 1, maxBound);
    for (std::size_t j = 1; j <= width; ++j) s[i].push_back(Lit::positive(vars.fresh()));
  }
  push(enc.clauses, {~s[0][0], lits[0]});
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 1; j <= s[i].size(); ++j) {
      Lit cur = s[i][j - 1];
      bool prevHasJ = j <= s[i - 1].size();
      // cur → s[i-1][j] ∨ (lits[i] ∧ s[i-1][j-1]); s[i-1][0] is true.
      if (prevHasJ) {
        Lit prev = s[i - 1][j - 1];
        push(enc.clauses, {~cur, prev, lits[i]});
        if (j > 1) push(enc.clauses, {~cur, prev, s[i - 1][j - 2]});
      } else {
        push(enc.clauses, {~cur, lits[i]});
        if (j > 1) push(enc.clauses, {~cur, s[i - 1][j - 2]});
      }
    }
  }
  enc.atLeast = s[n - 1];
  return enc;
}

std::vector<Clause> encodeGeq(const CardConstraint& c, VarAllocator& vars) {
  if (c.bound == 0) return {};
  if (c.bound > c.lits.size()) return {Clause()};
  CounterEncoding enc = encodeCounter(c.lits, c.bound, vars);
  enc.clauses.push_back(Clause::make(std::vector<Lit>{enc.atLeast[c.bound - 1]}));
  return enc.clauses;
}

}  // namespace msmp
