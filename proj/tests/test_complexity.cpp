#include <random>

#include <gtest/gtest.h>

#include "filtropt/anf.hpp"
#include "filtropt/complexity.hpp"
#include "filtropt/cosets.hpp"
#include "filtropt/poly_table.hpp"
#include "oracles.hpp"

using namespace filtropt;

namespace {

std::vector<std::uint8_t> bits_of(std::string_view s) {
  std::vector<std::uint8_t> out;
  for (char c : s) out.push_back(static_cast<std::uint8_t>(c - '0'));
  return out;
}

// Regenerates the input from its first lc bits and the connection polynomial.
bool regenerates(const std::vector<std::uint8_t>& s, const ComplexityResult& r) {
  for (std::size_t n = static_cast<std::size_t>(r.lc); n < s.size(); ++n) {
    int v = 0;
    for (int i = 1; i <= r.lc; ++i)
      if (r.coefficient(i)) v ^= s[n - i];
    if (v != s[n]) return false;
  }
  return true;
}

}  // namespace

TEST(Complexity, Examples) {
  EXPECT_EQ(berlekamp_massey(bits_of("0000")).lc, 0);
  EXPECT_EQ(berlekamp_massey(bits_of("1111")).lc, 1);
  EXPECT_EQ(berlekamp_massey(bits_of("0001")).lc, 4);
  EXPECT_EQ(berlekamp_massey(bits_of("1")).lc, 1);
  EXPECT_EQ(berlekamp_massey(bits_of("1010101")).lc, 2);
  EXPECT_EQ(berlekamp_massey(bits_of("1001011")).lc, 3);
  const auto empty = berlekamp_massey(std::vector<std::uint8_t>{});
  EXPECT_EQ(empty.lc, 0);
  EXPECT_TRUE(empty.empty_input);
}

TEST(Complexity, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 24);
    std::vector<std::uint8_t> s(n);
    for (auto& b : s) b = rng() & 1U;
    const auto r = berlekamp_massey(s);
    EXPECT_EQ(r.lc, oracle::shortest_lfsr_enumerate(s, 24)) << "n=" << n;
    EXPECT_TRUE(regenerates(s, r));
  }
}

TEST(Complexity, MatchesLinearSystemSearchOnLongInputs) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 20 + static_cast<int>(rng() % 44);
    std::vector<std::uint8_t> s(n);
    for (auto& b : s) b = rng() & 1U;
    // Sparse inputs push lc towards n.
    if (trial % 4 == 0)
      for (auto& b : s) b = (rng() % 8 == 0);
    const auto r = berlekamp_massey(s);
    EXPECT_EQ(r.lc, oracle::shortest_lfsr_linear(s));
    EXPECT_TRUE(regenerates(s, r));
  }
}

TEST(Complexity, WideRegistersCrossWordBoundaries) {
  // Degree 61 puts the top coefficient near the word boundary.
  for (int L : {31, 61}) {
    const auto ctx = field_for_degree(L);
    const LfsrGenerator gen(ctx);
    const auto r = berlekamp_massey(gen.output(3 * L));
    EXPECT_EQ(r.lc, L);
    EXPECT_EQ(r.poly_degree(), L);
  }
  std::vector<std::uint8_t> impulse(200, 0);
  impulse[150] = 1;
  EXPECT_EQ(berlekamp_massey(impulse).lc, 151);
  EXPECT_TRUE(regenerates(impulse, berlekamp_massey(impulse)));
}

TEST(Complexity, MinimalPolyDegreeEqualsLcForPeriodicInput) {
  std::mt19937_64 rng(23);
  const LfsrGenerator gen(field_for_degree(7));
  for (int i = 0; i < 100; ++i) {
    const auto f = random_filter(7, 3, rng);
    const auto z = filter_sequence(f, gen, 2 * gen.period());
    const auto r = berlekamp_massey(z);
    EXPECT_EQ(r.poly_degree(), r.lc);
  }
}

TEST(Complexity, PeriodicLcAndMinPeriod) {
  EXPECT_EQ(linear_complexity_periodic(bits_of("1110100")), 3);
  EXPECT_EQ(linear_complexity_periodic(bits_of("1")), 1);
  EXPECT_EQ(linear_complexity_periodic(bits_of("0")), 0);
  EXPECT_EQ(min_period(bits_of("101101")), 3U);
  EXPECT_EQ(min_period(bits_of("1110100")), 7U);
  EXPECT_EQ(min_period(bits_of("0000")), 1U);
  EXPECT_THROW(min_period(std::vector<std::uint8_t>{}), std::invalid_argument);
  EXPECT_THROW(linear_complexity_periodic(std::vector<std::uint8_t>{}), std::invalid_argument);
}

TEST(Complexity, FilteredSequencesRespectUpperBound) {
  for (int L : {3, 5}) {
    const LfsrGenerator gen(field_for_degree(L));
    for (const auto& f : enumerate_filters(L, 2)) {
      const auto z = filter_sequence(f, gen, gen.period());
      ASSERT_LE(BigInt(linear_complexity_periodic(z)), nk(L, 2));
      ASSERT_EQ(mersenne(L) % min_period(z), 0U);
    }
  }
  std::mt19937_64 rng(29);
  for (int L : {7, 11}) {
    const LfsrGenerator gen(field_for_degree(L));
    for (int i = 0; i < 100; ++i) {
      const auto f = random_filter(L, 3, rng);
      const auto z = filter_sequence(f, gen, gen.period());
      EXPECT_LE(BigInt(linear_complexity_periodic(z)), nk(L, 3));
      EXPECT_EQ(mersenne(L) % min_period(z), 0U);
    }
  }
}
