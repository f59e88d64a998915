#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace filtropt {

// Shortest LFSR of a finite sequence.
//
// minimal_poly is the connection polynomial C(x) = 1 + c_1 x + ... + c_lc x^lc
// (bit i = c_i), so s_n = sum_{i=1}^{lc} c_i s_{n-i} for lc <= n < length.
// Its degree equals lc whenever c_lc != 0, which holds for every purely
// periodic input.
struct ComplexityResult {
  int lc = 0;
  std::vector<std::uint64_t> minimal_poly{1};
  bool empty_input = false;

  bool coefficient(int i) const {
    const auto w = static_cast<std::size_t>(i) >> 6;
    return w < minimal_poly.size() && ((minimal_poly[w] >> (i & 63)) & 1U);
  }

  int poly_degree() const {
    for (auto w = minimal_poly.size(); w-- > 0;)
      if (minimal_poly[w] != 0) return static_cast<int>(64 * w) + 63 - std::countl_zero(minimal_poly[w]);
    return -1;
  }

  std::string poly_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out = "0x";
    for (int nib = poly_degree() / 4; nib >= 0; --nib) {
      int v = 0;
      for (int j = 0; j < 4; ++j)
        if (coefficient(4 * nib + j)) v |= 1 << j;
      out.push_back(kDigits[v]);
    }
    return out;
  }
};

namespace detail {

inline void xor_shifted(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src, std::size_t shift) {
  const std::size_t ws = shift >> 6, bs = shift & 63;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] == 0) continue;
    if (i + ws < dst.size()) dst[i + ws] ^= src[i] << bs;
    if (bs != 0 && i + ws + 1 < dst.size()) dst[i + ws + 1] ^= src[i] >> (64 - bs);
  }
}

inline std::uint64_t bits_at(const std::vector<std::uint64_t>& v, std::size_t pos) {
  const std::size_t w = pos >> 6, b = pos & 63;
  std::uint64_t r = w < v.size() ? v[w] >> b : 0;
  if (b != 0 && w + 1 < v.size()) r |= v[w + 1] << (64 - b);
  return r;
}

}  // namespace detail

inline ComplexityResult berlekamp_massey(std::span<const std::uint8_t> bits) {
  ComplexityResult res;
  const std::size_t n_bits = bits.size();
  if (n_bits == 0) {
    res.empty_input = true;
    return res;
  }
  const std::size_t words = n_bits / 64 + 2;
  // rev bit j = s_{N-1-j}, so s_{n-i} sits at offset (N-1-n) + i.
  std::vector<std::uint64_t> rev(words, 0);
  for (std::size_t j = 0; j < n_bits; ++j)
    if (bits[n_bits - 1 - j] & 1U) rev[j >> 6] |= std::uint64_t{1} << (j & 63);

  std::vector<std::uint64_t> c(words, 0), b(words, 0), t;
  c[0] = b[0] = 1;
  std::size_t lc = 0, shift = 1;
  for (std::size_t n = 0; n < n_bits; ++n) {
    const std::size_t off = n_bits - 1 - n;
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w <= lc / 64; ++w) {
      std::uint64_t cw = c[w];
      if (w == lc / 64) cw &= (lc % 64 == 63) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (lc % 64 + 1)) - 1);
      acc ^= cw & detail::bits_at(rev, off + 64 * w);
    }
    if ((std::popcount(acc) & 1) == 0) {
      ++shift;
    } else if (2 * lc <= n) {
      t = c;
      detail::xor_shifted(c, b, shift);
      lc = n + 1 - lc;
      b = std::move(t);
      shift = 1;
    } else {
      detail::xor_shifted(c, b, shift);
      ++shift;
    }
  }
  res.lc = static_cast<int>(lc);
  c.resize(lc / 64 + 1);
  if (lc % 64 != 63) c.back() &= (std::uint64_t{1} << (lc % 64 + 1)) - 1;
  res.minimal_poly = std::move(c);
  return res;
}

// Linear complexity of the periodic sequence with the given period: BM over two copies.
inline int linear_complexity_periodic(std::span<const std::uint8_t> period_bits) {
  if (period_bits.empty()) throw std::invalid_argument("empty period");
  std::vector<std::uint8_t> twice(period_bits.begin(), period_bits.end());
  twice.insert(twice.end(), period_bits.begin(), period_bits.end());
  return berlekamp_massey(twice).lc;
}

// Smallest d dividing the length such that the sequence is d-periodic.
inline std::uint64_t min_period(std::span<const std::uint8_t> bits) {
  const std::uint64_t n = bits.size();
  if (n == 0) throw std::invalid_argument("empty sequence");
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::uint64_t i = d; i < n && ok; ++i) ok = (bits[i] & 1U) == (bits[i - d] & 1U);
    if (ok) return d;
  }
  return n;
}

}  // namespace filtropt
