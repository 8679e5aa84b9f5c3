// SPDX-License-Identifier: Apache-2.0

// Sequential counter encoding of Σ p_i ≥ b.

#pragma once

#include <span>
#include <vector>

#include "msmp/formula.hpp"
#include "msmp/tseitin.hpp"

namespace msmp {

struct CardConstraint {
  std::vector<Lit> lits;
  /// 0 ≤ bound ≤ lits.size() + 1; lits.size() + 1 is unsatisfiable.
  std::uint32_t bound = 0;
};

/// Counter over `lits` with outputs atLeast[j-1] → (Σ lits ≥ j) for
/// j = 1..maxBound. Outputs only imply the count, so asserting any subset of
/// them yields exactly the assignments reaching the largest asserted bound.
struct CounterEncoding {
  std::vector<Clause> clauses;
  std::vector<Lit> atLeast;
};

CounterEncoding encodeCounter(std::span<const Lit> lits, std::uint32_t maxBound,
                              VarAllocator& vars);

/// Clauses whose models projected onto c.lits are exactly the assignments
/// with at least c.bound true literals. Empty for bound 0; a single empty
/// clause for bound > |lits|.
std::vector<Clause> encodeGeq(const CardConstraint& c, VarAllocator& vars);

}  // namespace msmp
