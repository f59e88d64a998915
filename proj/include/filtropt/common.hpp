#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace filtropt {

using BigInt = boost::multiprecision::cpp_int;

// Largest register length the sequence-level modules accept (windows are 64-bit masks).
inline constexpr int kMaxSequenceDegree = 63;

// Exact big-integer results are produced only up to this many bits.
inline constexpr std::uint64_t kExactBitBudget = std::uint64_t{1} << 20;

// splitmix64 finalizer; also used to derive per-trial seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline BigInt pow2(std::uint64_t e) {
  BigInt r = 1;
  r <<= static_cast<unsigned>(e);
  return r;
}

// 2^L - 1 for L <= 63.
constexpr std::uint64_t mersenne(int L) { return (std::uint64_t{1} << L) - 1; }

inline void require_order(int L, int k) {
  if (k < 1 || k > L)
    throw std::out_of_range("order k=" + std::to_string(k) + " outside [1, " + std::to_string(L) + "]");
}

}  // namespace filtropt
