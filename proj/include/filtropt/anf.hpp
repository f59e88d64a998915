#pragma once

// k-th order nonlinear filters in algebraic normal form.
//
// A monomial is a mask of register taps (bit i = x_i). Filters never carry
// a constant term and always contain at least one monomial of the top
// degree k, which is exactly the space counted by count_filters().

#include <algorithm>
#include <bit>
#include <cctype>
#include <concepts>
#include <cstdint>
#include <iterator>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "filtropt/common.hpp"
#include "filtropt/lfsr.hpp"

namespace filtropt {

using Monomial = std::uint64_t;

inline std::vector<int> monomial_taps(Monomial m) {
  std::vector<int> taps;
  for (; m != 0; m &= m - 1) taps.push_back(std::countr_zero(m));
  return taps;
}

// Degree first, then lexicographic by tap list.
inline bool monomial_less(Monomial a, Monomial b) {
  const int da = std::popcount(a), db = std::popcount(b);
  if (da != db) return da < db;
  return monomial_taps(a) < monomial_taps(b);
}

class FilterFunction {
 public:
  FilterFunction() = default;

  // Validates the monomial set and derives the order as the largest monomial degree.
  FilterFunction(int L, std::vector<Monomial> monomials) : L_(L), monomials_(std::move(monomials)) {
    if (L < 1 || L > kMaxSequenceDegree) throw std::invalid_argument("filter length L out of range");
    if (monomials_.empty()) throw std::invalid_argument("filter has no monomials");
    std::sort(monomials_.begin(), monomials_.end(), monomial_less);
    for (std::size_t i = 0; i < monomials_.size(); ++i) {
      const Monomial m = monomials_[i];
      if (m == 0) throw std::invalid_argument("constant monomial is not allowed");
      if ((m >> L) != 0) throw std::invalid_argument("monomial tap beyond L-1");
      if (i > 0 && monomials_[i - 1] == m) throw std::invalid_argument("duplicate monomial");
      k_ = std::max(k_, std::popcount(m));
    }
  }

  int length() const { return L_; }
  int order() const { return k_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }

  friend bool operator==(const FilterFunction&, const FilterFunction&) = default;

 private:
  int L_ = 0;
  int k_ = 0;
  std::vector<Monomial> monomials_;
};

// Window given as a mask, bit i = a_{n+i}.
inline int evaluate(const FilterFunction& f, std::uint64_t window) {
  int z = 0;
  for (Monomial m : f.monomials()) z ^= static_cast<int>((window & m) == m);
  return z;
}

inline int evaluate(const FilterFunction& f, std::span<const std::uint8_t> window) {
  if (window.size() != static_cast<std::size_t>(f.length()))
    throw std::invalid_argument("window has " + std::to_string(window.size()) + " bits, filter expects " +
                                std::to_string(f.length()));
  std::uint64_t w = 0;
  for (std::size_t i = 0; i < window.size(); ++i)
    if (window[i] & 1U) w |= std::uint64_t{1} << i;
  return evaluate(f, w);
}

// Symmetric difference of monomial sets; result may be empty, so it is returned raw.
inline std::vector<Monomial> monomial_xor(const FilterFunction& a, const FilterFunction& b) {
  std::vector<Monomial> y(a.monomials()), z(b.monomials()), out;
  std::sort(y.begin(), y.end());
  std::sort(z.begin(), z.end());
  std::set_symmetric_difference(y.begin(), y.end(), z.begin(), z.end(), std::back_inserter(out));
  return out;
}

inline std::vector<std::uint8_t> filter_windows(const FilterFunction& f, std::span<const std::uint64_t> windows) {
  std::vector<std::uint8_t> z(windows.size());
  for (std::size_t n = 0; n < windows.size(); ++n) z[n] = static_cast<std::uint8_t>(evaluate(f, windows[n]));
  return z;
}

inline std::vector<std::uint8_t> filter_sequence(const FilterFunction& f, const LfsrGenerator& gen,
                                                 std::uint64_t length) {
  if (f.length() != gen.degree())
    throw std::invalid_argument("filter over L=" + std::to_string(f.length()) + " applied to LFSR of length " +
                                std::to_string(gen.degree()));
  LfsrGenerator cursor = gen;
  cursor.reset();
  std::vector<std::uint8_t> z(length);
  std::uint64_t w = cursor.state();
  for (auto& bit : z) {
    bit = static_cast<std::uint8_t>(evaluate(f, w));
    cursor.next_bit();
    w = cursor.state();
  }
  return z;
}

// (2^C(L,k) - 1) * 2^C(L,k-1) * ... * 2^C(L,1)
inline BigInt count_filters(int L, int k) {
  require_order(L, k);
  BigInt lower_bits = 0;
  for (int i = 1; i < k; ++i) lower_bits += binomial(L, i);
  const BigInt top = binomial(L, k);
  if (top + lower_bits > kExactBitBudget)
    throw std::length_error("count_filters(" + std::to_string(L) + "," + std::to_string(k) +
                            ") is too large for an exact integer; use log-domain evaluation");
  return (pow2(top.convert_to<std::uint64_t>()) - 1) * pow2(lower_bits.convert_to<std::uint64_t>());
}

// All monomials of exactly degree d over L taps, lexicographic by tap list.
inline std::vector<Monomial> monomials_of_degree(int L, int d) {
  std::vector<Monomial> out;
  if (d < 1 || d > L) return out;
  // Lexicographic combinations of tap indices.
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  for (;;) {
    Monomial m = 0;
    for (int t : idx) m |= Monomial{1} << t;
    out.push_back(m);
    int i = d - 1;
    while (i >= 0 && idx[i] == L - d + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// Index bases for sampling and enumeration: top-degree monomials and all lower ones.
struct MonomialBasis {
  std::vector<Monomial> top;
  std::vector<Monomial> lower;

  MonomialBasis(int L, int k) {
    require_order(L, k);
    top = monomials_of_degree(L, k);
    for (int d = 1; d < k; ++d) {
      auto m = monomials_of_degree(L, d);
      lower.insert(lower.end(), m.begin(), m.end());
    }
  }
};

template <class Rng>
concept Random64 = std::uniform_random_bit_generator<Rng> &&
                   (std::numeric_limits<typename Rng::result_type>::digits == 64) && (Rng::min() == 0);

// Uniform over the count_filters(L, k) space: nonzero subset of top monomials
// (rejection on the empty set), each lower monomial kept with probability 1/2.
// Only raw 64-bit outputs are consumed, so results are identical across standard libraries.
template <Random64 Rng>
FilterFunction random_filter(int L, int k, Rng& rng) {
  const MonomialBasis basis(L, k);
  std::vector<Monomial> chosen;
  do {
    chosen.clear();
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < basis.top.size(); ++i) {
      if (i % 64 == 0) word = rng();
      if ((word >> (i % 64)) & 1U) chosen.push_back(basis.top[i]);
    }
  } while (chosen.empty());
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < basis.lower.size(); ++i) {
    if (i % 64 == 0) word = rng();
    if ((word >> (i % 64)) & 1U) chosen.push_back(basis.lower[i]);
  }
  return FilterFunction(L, std::move(chosen));
}

// The whole filter space, addressable by index for range-splitting.
// Index order: top-degree subset mask ascending from 1, then lower mask ascending from 0.
class FilterSpace {
 public:
  static constexpr std::uint64_t kDefaultCap = std::uint64_t{1} << 24;

  FilterSpace(int L, int k, std::uint64_t cap = kDefaultCap) : L_(L), k_(k), basis_(L, k) {
    const BigInt total = count_filters(L, k);
    if (total > cap)
      throw std::length_error("enumeration of " + total.str() + " filters exceeds the cap of " + std::to_string(cap));
    size_ = total.convert_to<std::uint64_t>();
    lower_bits_ = static_cast<int>(basis_.lower.size());
  }

  int length() const { return L_; }
  int order() const { return k_; }
  std::uint64_t size() const { return size_; }

  FilterFunction at(std::uint64_t index) const {
    if (index >= size_) throw std::out_of_range("filter index out of range");
    const std::uint64_t top_mask = (index >> lower_bits_) + 1;
    const std::uint64_t low_mask = index & ((std::uint64_t{1} << lower_bits_) - 1);
    std::vector<Monomial> ms;
    for (std::size_t i = 0; i < basis_.top.size(); ++i)
      if ((top_mask >> i) & 1U) ms.push_back(basis_.top[i]);
    for (std::size_t i = 0; i < basis_.lower.size(); ++i)
      if ((low_mask >> i) & 1U) ms.push_back(basis_.lower[i]);
    return FilterFunction(L_, std::move(ms));
  }

  class iterator {
   public:
    using value_type = FilterFunction;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    iterator(const FilterSpace* space, std::uint64_t i) : space_(space), i_(i) {}
    FilterFunction operator*() const { return space_->at(i_); }
    iterator& operator++() {
      ++i_;
      return *this;
    }
    iterator operator++(int) {
      auto t = *this;
      ++i_;
      return t;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.i_ == b.i_; }

   private:
    const FilterSpace* space_ = nullptr;
    std::uint64_t i_ = 0;
  };

  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, size_}; }

 private:
  int L_;
  int k_;
  MonomialBasis basis_;
  std::uint64_t size_ = 0;
  int lower_bits_ = 0;
};

inline FilterSpace enumerate_filters(int L, int k, std::uint64_t cap = FilterSpace::kDefaultCap) {
  return FilterSpace(L, k, cap);
}

// ---------------------------------------------------------------------------
// Text and JSON forms

enum class AnfErrorKind { empty_input, syntax, constant_term, duplicate_tap, duplicate_monomial, tap_out_of_range };

class AnfParseError : public std::invalid_argument {
 public:
  AnfParseError(AnfErrorKind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  AnfErrorKind kind() const { return kind_; }

 private:
  AnfErrorKind kind_;
};

// Grammar: monomials joined by '+', taps joined by '*', taps written x<index>; whitespace ignored.
inline FilterFunction parse_anf(std::string_view text, int L) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw AnfParseError(AnfErrorKind::empty_input, "empty ANF expression");

  std::vector<Monomial> monomials;
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) {
    throw AnfParseError(AnfErrorKind::syntax, msg + " at offset " + std::to_string(pos));
  };
  for (;;) {
    if (pos < s.size() && (s[pos] == '0' || s[pos] == '1') &&
        (pos + 1 == s.size() || s[pos + 1] == '+'))
      throw AnfParseError(AnfErrorKind::constant_term, "constant term is not allowed");
    Monomial m = 0;
    for (;;) {
      if (pos >= s.size() || s[pos] != 'x') fail("expected tap 'x<index>'");
      ++pos;
      const std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos == start) fail("missing tap index");
      if (pos - start > 3) throw AnfParseError(AnfErrorKind::tap_out_of_range, "tap index too large");
      const int tap = std::stoi(s.substr(start, pos - start));
      if (tap >= L)
        throw AnfParseError(AnfErrorKind::tap_out_of_range,
                            "tap x" + std::to_string(tap) + " outside register of length " + std::to_string(L));
      const Monomial bit = Monomial{1} << tap;
      if (m & bit) throw AnfParseError(AnfErrorKind::duplicate_tap, "tap x" + std::to_string(tap) + " repeated");
      m |= bit;
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (std::find(monomials.begin(), monomials.end(), m) != monomials.end())
      throw AnfParseError(AnfErrorKind::duplicate_monomial, "monomial repeated");
    monomials.push_back(m);
    if (pos == s.size()) break;
    if (s[pos] != '+') fail("expected '+'");
    ++pos;
  }
  return FilterFunction(L, std::move(monomials));
}

inline std::string format_monomial(Monomial m) {
  std::string out;
  for (int t : monomial_taps(m)) {
    if (!out.empty()) out += '*';
    out += 'x' + std::to_string(t);
  }
  return out;
}

inline std::string format_anf(const FilterFunction& f) {
  std::string out;
  for (Monomial m : f.monomials()) {
    if (!out.empty()) out += " + ";
    out += format_monomial(m);
  }
  return out;
}

// JSON form: array of tap-index arrays, e.g. [[0],[1,3]].
inline nlohmann::json filter_to_json(const FilterFunction& f) {
  auto arr = nlohmann::json::array();
  for (Monomial m : f.monomials()) arr.push_back(monomial_taps(m));
  return arr;
}

inline FilterFunction filter_from_json(const nlohmann::json& j, int L) {
  if (!j.is_array()) throw std::invalid_argument("filter JSON must be an array of monomials");
  std::vector<Monomial> ms;
  for (const auto& mono : j) {
    if (!mono.is_array() || mono.empty()) throw std::invalid_argument("monomial must be a non-empty tap array");
    Monomial m = 0;
    for (const auto& t : mono) {
      const int tap = t.get<int>();
      if (tap < 0 || tap >= L) throw std::invalid_argument("tap out of range in filter JSON");
      if (m & (Monomial{1} << tap)) throw std::invalid_argument("duplicate tap in filter JSON");
      m |= Monomial{1} << tap;
    }
    ms.push_back(m);
  }
  return FilterFunction(L, std::move(ms));
}

}  // namespace filtropt
