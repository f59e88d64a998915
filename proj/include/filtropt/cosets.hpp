#pragma once

// Cyclotomic cosets of 2 modulo 2^L - 1.
//
// Exponents are L-bit strings and doubling is a cyclic rotation, so a coset
// is a binary necklace: its cardinal is the rotation period and every member
// has the same binary weight. The exponent 2^L - 1 (congruent to 0) forms
// the weight-L singleton and only appears when the weight bound reaches L.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "filtropt/common.hpp"

namespace filtropt {

struct CyclotomicCoset {
  std::uint64_t leader = 0;
  std::vector<std::uint64_t> elements;  // orbit in doubling order, starting at the leader
  int cardinal = 0;
  int weight = 0;

  friend bool operator==(const CyclotomicCoset&, const CyclotomicCoset&) = default;
};

// Largest L for which cosets are listed explicitly.
inline constexpr int kMaxCosetListDegree = 32;

namespace detail {

inline std::uint64_t rotate_left(std::uint64_t e, int L) {
  const std::uint64_t mask = mersenne(L);
  return ((e << 1) | (e >> (L - 1))) & mask;
}

inline CyclotomicCoset orbit(std::uint64_t e, int L) {
  CyclotomicCoset c;
  std::uint64_t x = e;
  do {
    c.elements.push_back(x);
    x = rotate_left(x, L);
  } while (x != e);
  const auto it = std::min_element(c.elements.begin(), c.elements.end());
  std::rotate(c.elements.begin(), it, c.elements.end());
  c.leader = c.elements.front();
  c.cardinal = static_cast<int>(c.elements.size());
  c.weight = std::popcount(e);
  return c;
}

inline bool is_leader(std::uint64_t e, int L) {
  std::uint64_t x = e;
  for (int i = 1; i < L; ++i) {
    x = rotate_left(x, L);
    if (x < e) return false;
  }
  return true;
}

inline void check_list_degree(int L) {
  if (L < 2 || L > kMaxCosetListDegree)
    throw std::out_of_range("explicit coset listing supports 2 <= L <= " + std::to_string(kMaxCosetListDegree));
}

}  // namespace detail

// Orbit of e under doubling modulo 2^L - 1, 1 <= e <= 2^L - 2.
inline CyclotomicCoset coset_of(std::uint64_t e, int L) {
  detail::check_list_degree(L);
  if (e < 1 || e > mersenne(L) - 1)
    throw std::out_of_range("exponent " + std::to_string(e) + " outside [1, 2^L - 2]");
  return detail::orbit(e, L);
}

// Distinct cosets whose weight lies in [1, k], sorted by leader.
inline std::vector<CyclotomicCoset> cosets_up_to_weight(int L, int k) {
  detail::check_list_degree(L);
  require_order(L, k);
  std::vector<CyclotomicCoset> out;
  for (int w = 1; w <= std::min(k, L - 1); ++w) {
    // Gosper's hack over all L-bit values of weight w.
    std::uint64_t v = mersenne(w);
    while (v <= mersenne(L)) {
      if (detail::is_leader(v, L)) out.push_back(detail::orbit(v, L));
      const std::uint64_t c = v & (~v + 1);
      const std::uint64_t r = v + c;
      if (r == 0) break;
      v = (((r ^ v) >> 2) / c) | r;
    }
  }
  if (k == L) {
    CyclotomicCoset all_ones;
    all_ones.leader = mersenne(L);
    all_ones.elements = {mersenne(L)};
    all_ones.cardinal = 1;
    all_ones.weight = L;
    out.push_back(all_ones);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.leader < b.leader; });
  return out;
}

// Every coset of the nonzero residues, including {2^L - 1}.
inline std::vector<CyclotomicCoset> all_cosets(int L) { return cosets_up_to_weight(L, L); }

// N_k = sum_{i=1}^{k} C(L, i).
inline BigInt nk(int L, int k) {
  require_order(L, k);
  BigInt s = 0;
  for (int i = 1; i <= k; ++i) s += binomial(L, i);
  return s;
}

// Period of the coset's characteristic sequence: (2^L - 1) / gcd(leader, 2^L - 1).
inline std::uint64_t coset_period(const CyclotomicCoset& c, int L) {
  const std::uint64_t n = mersenne(L);
  return n / std::gcd(c.leader % n == 0 ? n : c.leader, n);
}

// Number of cosets per (cardinal, weight), for weights 1..k, computed by
// Möbius inversion over rotation periods instead of listing orbits.
struct CosetCensus {
  int L = 0;
  int k = 0;
  std::map<std::pair<int, int>, BigInt> count;  // (cardinal, weight) -> number of cosets

  BigInt total() const {
    BigInt s = 0;
    for (const auto& [key, n] : count) s += n;
    return s;
  }
  // Sum of cardinals; equals nk(L, k).
  BigInt total_cardinal() const {
    BigInt s = 0;
    for (const auto& [key, n] : count) s += n * key.first;
    return s;
  }
};

namespace detail {

inline int mobius(int n) {
  int m = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      m = -m;
    }
  }
  if (n > 1) m = -m;
  return m;
}

inline std::vector<int> divisors(int n) {
  std::vector<int> d;
  for (int i = 1; i <= n; ++i)
    if (n % i == 0) d.push_back(i);
  return d;
}

}  // namespace detail

inline CosetCensus coset_census(int L, int k) {
  require_order(L, k);
  CosetCensus census{L, k, {}};
  // Strings of weight w invariant under rotation by d (d | L): C(d, w*d/L) when L | w*d.
  auto periodic = [L](int d, int w) -> BigInt {
    if ((static_cast<long long>(w) * d) % L != 0) return 0;
    return binomial(d, static_cast<int>(static_cast<long long>(w) * d / L));
  };
  const auto divs = detail::divisors(L);
  for (int w = 1; w <= k; ++w) {
    for (int d : divs) {
      BigInt exact = 0;
      for (int e : divs) {
        if (d % e != 0) continue;
        const int mu = detail::mobius(d / e);
        if (mu != 0) exact += mu * periodic(e, w);
      }
      if (exact != 0) census.count[{d, w}] = exact / d;
    }
  }
  return census;
}

}  // namespace filtropt
