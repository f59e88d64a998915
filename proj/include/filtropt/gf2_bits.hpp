#pragma once

// Fixed-capacity bit vector used for GF(2)[x] polynomials and GF(2^L) elements.
// Bit i is the coefficient of x^i.

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace filtropt {

class Gf2Bits {
 public:
  static constexpr int kWords = 5;
  static constexpr int kCapacity = 64 * kWords;

  constexpr Gf2Bits() = default;

  static constexpr Gf2Bits from_u64(std::uint64_t v) {
    Gf2Bits b;
    b.words_[0] = v;
    return b;
  }

  static constexpr Gf2Bits monomial(int i) {
    Gf2Bits b;
    b.set(i);
    return b;
  }

  // Accepts an optional 0x/0X prefix; underscores are ignored.
  static Gf2Bits from_hex(std::string_view text) {
    if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
    Gf2Bits b;
    int nibble = 0;
    bool any = false;
    for (auto it = text.rbegin(); it != text.rend(); ++it) {
      const char c = *it;
      if (c == '_') continue;
      int v;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
      else throw std::invalid_argument("invalid hex digit '" + std::string(1, c) + "'");
      any = true;
      if (v != 0 && 4 * nibble >= kCapacity)
        throw std::invalid_argument("hex value exceeds " + std::to_string(kCapacity) + " bits");
      for (int j = 0; j < 4; ++j)
        if ((v >> j) & 1) b.set(4 * nibble + j);
      ++nibble;
    }
    if (!any) throw std::invalid_argument("empty hex string");
    return b;
  }

  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    const int deg = degree();
    if (deg < 0) return "0x0";
    std::string out = "0x";
    for (int nib = deg / 4; nib >= 0; --nib) {
      int v = 0;
      for (int j = 0; j < 4; ++j)
        if (test(4 * nib + j)) v |= 1 << j;
      out.push_back(kDigits[v]);
    }
    return out;
  }

  constexpr bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  constexpr void set(int i, bool v = true) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v) words_[i >> 6] |= m;
    else words_[i >> 6] &= ~m;
  }
  constexpr void flip(int i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  // -1 for the zero polynomial.
  constexpr int degree() const {
    for (int w = kWords - 1; w >= 0; --w)
      if (words_[w] != 0) return 64 * w + 63 - std::countl_zero(words_[w]);
    return -1;
  }

  constexpr bool is_zero() const { return degree() < 0; }

  constexpr int popcount() const {
    int n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
  }

  constexpr std::uint64_t to_u64() const {
    if (degree() >= 64) throw std::out_of_range("Gf2Bits value does not fit in 64 bits");
    return words_[0];
  }

  constexpr std::uint64_t word(int i) const { return words_[i]; }

  constexpr Gf2Bits& operator^=(const Gf2Bits& o) {
    for (int w = 0; w < kWords; ++w) words_[w] ^= o.words_[w];
    return *this;
  }
  friend constexpr Gf2Bits operator^(Gf2Bits a, const Gf2Bits& b) { return a ^= b; }

  constexpr Gf2Bits& operator&=(const Gf2Bits& o) {
    for (int w = 0; w < kWords; ++w) words_[w] &= o.words_[w];
    return *this;
  }
  friend constexpr Gf2Bits operator&(Gf2Bits a, const Gf2Bits& b) { return a &= b; }

  // Bits shifted past the capacity are dropped.
  constexpr Gf2Bits shifted_left(int s) const {
    Gf2Bits r;
    const int ws = s >> 6, bs = s & 63;
    for (int w = kWords - 1; w >= ws; --w) {
      std::uint64_t v = words_[w - ws] << bs;
      if (bs != 0 && w - ws - 1 >= 0) v |= words_[w - ws - 1] >> (64 - bs);
      r.words_[w] = v;
    }
    return r;
  }

  constexpr void shift_left_one() {
    for (int w = kWords - 1; w > 0; --w) words_[w] = (words_[w] << 1) | (words_[w - 1] >> 63);
    words_[0] <<= 1;
  }

  friend constexpr bool operator==(const Gf2Bits&, const Gf2Bits&) = default;

 private:
  std::array<std::uint64_t, kWords> words_{};
};

}  // namespace filtropt
