#pragma once

// Fibonacci LFSR producing the m-sequence of a primitive modulus.
//
// Register bit i holds stage i; stage 0 is the output cell. With modulus
// x^L + sum c_i x^i the output obeys a_{n+L} = sum c_i a_{n+i}, so the
// window of stages at time n is (a_n, ..., a_{n+L-1}).

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "filtropt/field.hpp"

namespace filtropt {

class LfsrGenerator {
 public:
  // Canonical seed (1, 0, ..., 0).
  static constexpr std::uint64_t kCanonicalSeed = 1;

  explicit LfsrGenerator(FieldContext ctx, std::uint64_t seed = kCanonicalSeed) : ctx_(std::move(ctx)) {
    L_ = ctx_.degree();
    if (L_ > kMaxSequenceDegree)
      throw std::invalid_argument("LFSR length " + std::to_string(L_) + " exceeds " +
                                  std::to_string(kMaxSequenceDegree));
    mask_ = mersenne(L_);
    taps_ = ctx_.modulus().to_u64() & mask_;
    if (seed == 0) throw std::invalid_argument("LFSR seed must be nonzero");
    if ((seed & ~mask_) != 0) throw std::invalid_argument("LFSR seed wider than " + std::to_string(L_) + " bits");
    initial_ = state_ = seed;
  }

  int degree() const { return L_; }
  const FieldContext& context() const { return ctx_; }
  std::uint64_t state() const { return state_; }
  std::uint64_t initial_state() const { return initial_; }
  std::uint64_t taps() const { return taps_; }
  std::uint64_t period() const { return mersenne(L_); }

  int next_bit() {
    const int out = static_cast<int>(state_ & 1U);
    state_ = step(state_);
    return out;
  }

  void reset() { state_ = initial_; }

  // (a_n, ..., a_{n+L-1}) as a mask, bit i = a_{n+i}. Independent of the cursor.
  std::uint64_t window(std::uint64_t n) const {
    std::uint64_t s = initial_;
    for (n %= period(); n > 0; --n) s = step(s);
    return s;
  }

  // Every window of one period, in order.
  std::vector<std::uint64_t> period_windows() const {
    std::vector<std::uint64_t> out(period());
    std::uint64_t s = initial_;
    for (auto& w : out) {
      w = s;
      s = step(s);
    }
    return out;
  }

  std::vector<std::uint8_t> output(std::uint64_t length) const {
    std::vector<std::uint8_t> out(length);
    std::uint64_t s = initial_;
    for (auto& b : out) {
      b = static_cast<std::uint8_t>(s & 1U);
      s = step(s);
    }
    return out;
  }

 private:
  std::uint64_t step(std::uint64_t s) const {
    const std::uint64_t fb = std::popcount(s & taps_) & 1U;
    return (s >> 1) | (fb << (L_ - 1));
  }

  FieldContext ctx_;
  int L_ = 0;
  std::uint64_t mask_ = 0;
  std::uint64_t taps_ = 0;
  std::uint64_t initial_ = 0;
  std::uint64_t state_ = 0;
};

// Nonzero c with bits[n] = trace(c * alpha^n) over the whole input, if any.
// c is solved from the first L bits and then checked against the rest.
inline std::optional<FieldElement> trace_phase(const FieldContext& ctx, std::span<const std::uint8_t> bits) {
  const int L = ctx.degree();
  if (!ctx.verified_primitive()) throw std::invalid_argument("trace representation needs a verified primitive context");
  if (L > kMaxSequenceDegree || bits.size() < static_cast<std::size_t>(L)) return std::nullopt;

  // Row n: coefficients trace(x^j alpha^n) for j < L, augmented with bits[n].
  std::vector<std::uint64_t> rows(L);
  std::vector<FieldElement> basis;
  for (int j = 0; j < L; ++j) basis.push_back(ctx.element(Gf2Bits::monomial(j)));
  for (int n = 0; n < L; ++n) {
    std::uint64_t row = 0;
    for (int j = 0; j < L; ++j)
      if (trace(ctx, basis[j])) row |= std::uint64_t{1} << j;
    rows[n] = row | (std::uint64_t{bits[n] & 1U} << L);
    for (auto& b : basis) b = mul(ctx, b, ctx.alpha());
  }
  // Gauss-Jordan over GF(2); the trace form is nondegenerate so the system is square and regular.
  for (int col = 0; col < L; ++col) {
    int piv = -1;
    for (int r = col; r < L; ++r)
      if ((rows[r] >> col) & 1U) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(rows[col], rows[piv]);
    for (int r = 0; r < L; ++r)
      if (r != col && ((rows[r] >> col) & 1U)) rows[r] ^= rows[col];
  }
  std::uint64_t c = 0;
  for (int j = 0; j < L; ++j)
    if ((rows[j] >> L) & 1U) c |= std::uint64_t{1} << j;
  if (c == 0) return std::nullopt;

  const FieldElement ce = ctx.element(c);
  FieldElement t = ce;
  for (std::size_t n = 0; n < bits.size(); ++n) {
    if (trace(ctx, t) != (bits[n] & 1)) return std::nullopt;
    t = mul(ctx, t, ctx.alpha());
  }
  return ce;
}

inline bool trace_consistency(const FieldContext& ctx, std::span<const std::uint8_t> bits) {
  return trace_phase(ctx, bits).has_value();
}

// One full period of the generator matches some trace(c * alpha^n), c != 0.
inline bool trace_consistency(const LfsrGenerator& gen) {
  const auto period_bits = gen.output(gen.period());
  return trace_consistency(gen.context(), period_bits);
}

}  // namespace filtropt
