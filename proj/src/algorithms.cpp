// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <numeric>

#include "msmp/engine.hpp"
#include "msmp/error.hpp"

namespace msmp {

namespace {

ElementSet unite(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ElementSet slice(const ElementSet& v, std::size_t from, std::size_t to) {
  return ElementSet(v.begin() + static_cast<std::ptrdiff_t>(from),
                    v.begin() + static_cast<std::ptrdiff_t>(to));
}

/// Counts tests and remembers the witness of the most recent true test.
class Probe {
 public:
  explicit Probe(MonotonePredicate& p) : p_(p) {}

  bool operator()(const ElementSet& w) {
    ++calls;
    TestOutcome t = p_.test(w);
    if (t.holds) {
      lastTrue = w;
      lastTrueWitness = std::move(t.witness);
    } else if (t.witness) {
      lastFailingWitness = std::move(t.witness);
    }
    return t.holds;
  }

  std::uint64_t calls = 0;
  std::optional<ElementSet> lastTrue;
  std::optional<Assignment> lastTrueWitness;
  std::optional<Assignment> lastFailingWitness;

 private:
  MonotonePredicate& p_;
};

ElementSet deletion(Probe& P, std::size_t n) {
  ElementSet m(n);
  std::iota(m.begin(), m.end(), 0);
  for (std::size_t e = 0; e < n; ++e) {
    ElementSet w;
    w.reserve(m.size());
    for (std::size_t x : m)
      if (x != e) w.push_back(x);
    if (P(w)) m = std::move(w);
  }
  return m;
}

// Both grow M by transition elements: the smallest prefix j of `rem` with
// P(M ∪ rem[0..j)) true; P(M ∪ rem) is known true throughout.
ElementSet insertion(Probe& P, std::size_t n) {
  ElementSet m;
  ElementSet rem(n);
  std::iota(rem.begin(), rem.end(), 0);
  while (!rem.empty()) {
    std::size_t j = 0;
    while (j < rem.size() && !P(unite(m, slice(rem, 0, j)))) ++j;
    if (j == 0) break;
    m = unite(m, {rem[j - 1]});
    rem.resize(j - 1);
  }
  return m;
}

ElementSet dichotomic(Probe& P, std::size_t n) {
  ElementSet m;
  ElementSet rem(n);
  std::iota(rem.begin(), rem.end(), 0);
  while (!rem.empty()) {
    if (P(m)) break;
    std::size_t lo = 1, hi = rem.size();
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      if (P(unite(m, slice(rem, 0, mid))))
        hi = mid;
      else
        lo = mid + 1;
    }
    m = unite(m, {rem[lo - 1]});
    rem.resize(lo - 1);
  }
  return m;
}

// Junker's QuickXplain: a minimal subset X of c with P(b ∪ X).
ElementSet quickXplain(Probe& P, const ElementSet& b, bool delta, const ElementSet& c) {
  if (delta && P(b)) return {};
  if (c.size() == 1) return c;
  std::size_t half = c.size() / 2;
  ElementSet c1 = slice(c, 0, half);
  ElementSet c2 = slice(c, half, c.size());
  ElementSet x2 = quickXplain(P, unite(b, c1), !c1.empty(), c2);
  ElementSet x1 = quickXplain(P, unite(b, x2), !x2.empty(), c1);
  return unite(x1, x2);
}

ElementSet quickXplainTop(Probe& P, std::size_t n) {
  if (n == 0) return {};
  if (P({})) return {};
  ElementSet all(n);
  std::iota(all.begin(), all.end(), 0);
  return quickXplain(P, {}, false, all);
}

// Deletion with geometrically growing chunks: drop the next 1, 2, 4, ...
// candidates while P survives; on failure, binary search the chunk for the
// necessary element and restart at chunk size 1.
ElementSet progression(Probe& P, std::size_t n) {
  ElementSet m;
  ElementSet w(n);
  std::iota(w.begin(), w.end(), 0);
  std::size_t k = 1;
  while (!w.empty()) {
    std::size_t c = std::min(k, w.size());
    if (P(unite(m, slice(w, c, w.size())))) {
      w = slice(w, c, w.size());
      k *= 2;
      continue;
    }
    // P(M ∪ w[0..)) holds and P(M ∪ w[c..)) fails.
    std::size_t lo = 0, hi = c;
    while (hi - lo > 1) {
      std::size_t mid = lo + (hi - lo) / 2;
      if (P(unite(m, slice(w, mid, w.size()))))
        lo = mid;
      else
        hi = mid;
    }
    m = unite(m, {w[lo]});
    w = slice(w, lo + 1, w.size());
    k = 1;
  }
  return m;
}

}  // namespace

MinimalSetResult extractMinimal(MonotonePredicate& p, Algorithm alg,
                                const ExtractOptions& options) {
  Probe probe(p);
  const std::size_t n = p.size();
  MinimalSetResult result;
  result.algorithm = alg;
  result.referenceSize = n;

  if (options.checkWellPosed) {
    ElementSet all(n);
    std::iota(all.begin(), all.end(), 0);
    if (!probe(all)) throw IllPosedError(options.illPosedMessage);
    result.wellPosedCalls = 1;
  }

  switch (alg) {
    case Algorithm::Deletion: result.minimal = deletion(probe, n); break;
    case Algorithm::Insertion: result.minimal = insertion(probe, n); break;
    case Algorithm::Dichotomic: result.minimal = dichotomic(probe, n); break;
    case Algorithm::QuickXplain: result.minimal = quickXplainTop(probe, n); break;
    case Algorithm::Progression: result.minimal = progression(probe, n); break;
  }

  if (p.form() == Form::L) {
    if (!probe.lastTrue || *probe.lastTrue != result.minimal) {
      if (!probe(result.minimal))
        throw Error("internal error: predicate false on the extracted set");
      result.witnessCalls = 1;
    }
    result.witness = probe.lastTrueWitness;
  } else {
    result.witness = probe.lastFailingWitness;
  }
  result.oracleCalls = probe.calls;
  return result;
}

}  // namespace msmp
