#include <set>

#include <gtest/gtest.h>

#include "filtropt/complexity.hpp"
#include "filtropt/lfsr.hpp"
#include "filtropt/poly_table.hpp"
#include "oracles.hpp"

using namespace filtropt;

namespace {

// trace via repeated squaring on plain integers
int oracle_trace(std::uint64_t v, std::uint64_t mod, int L) {
  std::uint64_t sum = 0, t = v;
  for (int i = 0; i < L; ++i) {
    sum ^= t;
    t = oracle::clmul_mod(t, t, mod, L);
  }
  return static_cast<int>(sum);
}

}  // namespace

TEST(Lfsr, PeriodIsMaximal) {
  for (int L = 2; L <= 12; ++L) {
    const LfsrGenerator gen(field_for_degree(L));
    const auto bits = gen.output(2 * gen.period());
    EXPECT_EQ(min_period(bits), mersenne(L)) << "L=" << L;
  }
}

TEST(Lfsr, SmallExampleRepeatsAfterSeven) {
  LfsrGenerator gen(field_for_degree(3));
  std::vector<int> first;
  for (int i = 0; i < 14; ++i) first.push_back(gen.next_bit());
  for (int i = 0; i < 7; ++i) EXPECT_EQ(first[i], first[i + 7]);
  EXPECT_EQ(gen.state(), gen.initial_state());
  gen.next_bit();
  gen.reset();
  EXPECT_EQ(gen.state(), LfsrGenerator::kCanonicalSeed);
}

TEST(Lfsr, OutputObeysRecurrenceOfModulus) {
  for (int L : {5, 9, 16, 31, 61}) {
    const LfsrGenerator gen(field_for_degree(L));
    const std::uint64_t mod = gen.context().modulus().to_u64() & mersenne(L);
    const auto a = gen.output(400);
    for (std::size_t n = 0; n + L < a.size(); ++n) {
      int s = 0;
      for (int i = 0; i < L; ++i)
        if ((mod >> i) & 1U) s ^= a[n + i];
      ASSERT_EQ(s, a[n + L]) << "L=" << L << " n=" << n;
    }
  }
}

TEST(Lfsr, OtherSeedsAreCyclicShifts) {
  for (int L = 2; L <= 8; ++L) {
    const auto ctx = field_for_degree(L);
    const LfsrGenerator canonical(ctx);
    const auto ref = canonical.output(2 * canonical.period());
    for (std::uint64_t seed = 1; seed <= mersenne(L); ++seed) {
      const auto out = LfsrGenerator(ctx, seed).output(canonical.period());
      bool found = false;
      for (std::uint64_t shift = 0; shift < canonical.period() && !found; ++shift)
        found = std::equal(out.begin(), out.end(), ref.begin() + static_cast<std::ptrdiff_t>(shift));
      EXPECT_TRUE(found) << "L=" << L << " seed=" << seed;
    }
  }
}

TEST(Lfsr, WindowsVisitEveryNonzeroState) {
  for (int L = 2; L <= 12; ++L) {
    const LfsrGenerator gen(field_for_degree(L));
    const auto w = gen.period_windows();
    const std::set<std::uint64_t> distinct(w.begin(), w.end());
    EXPECT_EQ(distinct.size(), mersenne(L));
    EXPECT_EQ(distinct.count(0), 0U);
    EXPECT_EQ(gen.window(0), gen.initial_state());
    EXPECT_EQ(gen.window(gen.period()), gen.window(0));
    EXPECT_EQ(gen.window(5), w[5 % w.size()]);
    // window bit i is the output bit i steps later
    const auto a = gen.output(gen.period() + L);
    for (std::uint64_t n = 0; n < gen.period(); n += 7)
      for (int i = 0; i < L; ++i) ASSERT_EQ((w[n] >> i) & 1U, a[n + i]);
  }
}

TEST(Lfsr, MSequenceBalance) {
  for (int L = 2; L <= 16; ++L) {
    const LfsrGenerator gen(field_for_degree(L));
    const auto a = gen.output(gen.period());
    EXPECT_EQ(std::count(a.begin(), a.end(), 1), std::int64_t{1} << (L - 1)) << "L=" << L;
  }
}

TEST(Lfsr, TraceConsistencyBruteForceGF8) {
  const auto ctx = field_for_degree(3);
  const LfsrGenerator gen(ctx);
  const auto a = gen.output(7);
  int matches = 0;
  for (std::uint64_t c = 1; c < 8; ++c) {
    std::uint64_t t = c;
    bool ok = true;
    for (int n = 0; n < 7; ++n) {
      ok = ok && oracle_trace(t, 0xb, 3) == a[n];
      t = oracle::clmul_mod(t, 2, 0xb, 3);
    }
    if (ok) ++matches;
  }
  EXPECT_EQ(matches, 1);
  EXPECT_TRUE(trace_consistency(gen));
}

TEST(Lfsr, TraceConsistencyHoldsForEveryTableDegree) {
  for (int L = 2; L <= 16; ++L) EXPECT_TRUE(trace_consistency(LfsrGenerator(field_for_degree(L)))) << L;
  const LfsrGenerator gen61(field_for_degree(61));
  EXPECT_TRUE(trace_consistency(gen61.context(), gen61.output(200)));
}

TEST(Lfsr, TraceConsistencyRejectsNonTraceSequences) {
  const auto ctx = field_for_degree(5);
  const std::vector<std::uint8_t> zeros(31, 0);
  EXPECT_FALSE(trace_consistency(ctx, zeros));
  auto a = LfsrGenerator(ctx).output(31);
  a[20] ^= 1;
  EXPECT_FALSE(trace_consistency(ctx, a));
}

TEST(Lfsr, MinimalPolynomialIsReciprocalOfModulus) {
  for (int L = 2; L <= 16; ++L) {
    const LfsrGenerator gen(field_for_degree(L));
    const auto r = berlekamp_massey(gen.output(2 * gen.period()));
    EXPECT_EQ(r.lc, L);
    // c_i of the connection polynomial equals modulus coefficient of x^{L-i}
    const std::uint64_t mod = gen.context().modulus().to_u64();
    std::uint64_t reciprocal = 0;
    for (int i = 0; i <= L; ++i)
      if ((mod >> i) & 1U) reciprocal |= std::uint64_t{1} << (L - i);
    EXPECT_EQ(r.minimal_poly[0], reciprocal) << "L=" << L;
  }
  // x^3 + x + 1 -> 1 + x^2 + x^3
  EXPECT_EQ(berlekamp_massey(LfsrGenerator(field_for_degree(3)).output(14)).poly_hex(), "0xd");
}

TEST(Lfsr, RejectsBadSeeds) {
  const auto ctx = field_for_degree(4);
  EXPECT_THROW(LfsrGenerator(ctx, 0), std::invalid_argument);
  EXPECT_THROW(LfsrGenerator(ctx, 0x10), std::invalid_argument);
  EXPECT_THROW(LfsrGenerator(field_for_degree(89)), std::invalid_argument);
}
