// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <bit>

#include "msmp/cardenc.hpp"
#include "test_util.hpp"

namespace msmp {
namespace {

std::vector<Lit> inputs(std::uint32_t n, std::uint64_t negMask) {
  std::vector<Lit> out;
  for (std::uint32_t i = 0; i < n; ++i) out.push_back(Lit(Var{i + 1}, (negMask >> i) & 1));
  return out;
}

std::vector<Lit> fix(const std::vector<Lit>& in, std::uint64_t trueMask) {
  std::vector<Lit> out;
  for (std::size_t i = 0; i < in.size(); ++i) out.push_back((trueMask >> i) & 1 ? in[i] : ~in[i]);
  return out;
}

TEST(EncodeGeq, ExhaustiveSmall) {
  for (std::uint32_t n = 0; n <= 6; ++n) {
    for (std::uint32_t k = 0; k <= n + 1; ++k) {
      auto lits = inputs(n, 0b101010);
      VarAllocator vars(n);
      CnfFormula f{0, encodeGeq({lits, k}, vars)};
      f.numVars = vars.numVars();
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        bool expected = static_cast<std::uint32_t>(std::popcount(m)) >= k;
        EXPECT_EQ(test::dpllSat(f, fix(lits, m)), expected) << "n=" << n << " k=" << k << " m=" << m;
      }
    }
  }
}

TEST(EncodeGeq, Edges) {
  VarAllocator vars(3);
  auto lits = inputs(3, 0);
  EXPECT_TRUE(encodeGeq({lits, 0}, vars).empty());
  auto over = encodeGeq({lits, 4}, vars);
  ASSERT_EQ(over.size(), 1u);
  EXPECT_TRUE(over[0].empty());
}

TEST(EncodeCounter, OutputsAreOneSided) {
  // Asserting any set of outputs is the same as asserting the largest.
  const std::uint32_t n = 4;
  auto lits = inputs(n, 0);
  VarAllocator vars(n);
  CounterEncoding enc = encodeCounter(lits, n, vars);
  ASSERT_EQ(enc.atLeast.size(), n);
  CnfFormula f{vars.numVars(), enc.clauses};
  for (std::uint64_t m = 0; m < 16; ++m) {
    for (std::uint64_t outs = 0; outs < 16; ++outs) {
      std::vector<Lit> fixed = fix(lits, m);
      std::uint32_t top = 0;
      for (std::uint32_t j = 0; j < n; ++j)
        if ((outs >> j) & 1) {
          fixed.push_back(enc.atLeast[j]);
          top = j + 1;
        }
      EXPECT_EQ(test::dpllSat(f, fixed), static_cast<std::uint32_t>(std::popcount(m)) >= top);
    }
  }
}

TEST(EncodeCounter, FreeOutputsNeverBlock) {
  auto lits = inputs(5, 0);
  VarAllocator vars(5);
  CounterEncoding enc = encodeCounter(lits, 3, vars);
  EXPECT_EQ(enc.atLeast.size(), 3u);
  CnfFormula f{vars.numVars(), enc.clauses};
  for (std::uint64_t m = 0; m < 32; ++m) EXPECT_TRUE(test::dpllSat(f, fix(lits, m)));
}

}  // namespace
}  // namespace msmp
