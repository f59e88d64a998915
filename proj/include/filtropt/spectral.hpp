#pragma once

// Finite-field spectrum of sequences with period dividing 2^L - 1.
//
// For a coset with leader j the coefficient is C_j = sum_n z_n alpha^{-jn};
// the sequence is recovered as z_n = sum over cosets of the trace from
// GF(2^r) of C_j alpha^{jn}. The number of nonzero spectral components is the
// linear complexity, and the period is the lcm of the periods of the cosets
// that are present.

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "filtropt/cosets.hpp"
#include "filtropt/field.hpp"

namespace filtropt {

struct SpectralLine {
  CyclotomicCoset coset;
  FieldElement coefficient;
};

struct Spectrum {
  FieldContext ctx;
  std::map<std::uint64_t, SpectralLine> lines;  // by coset leader; absent means C = 0

  // Highest coset weight carrying a line, 0 when empty.
  int max_weight() const {
    int w = 0;
    for (const auto& [leader, line] : lines) w = std::max(w, line.coset.weight);
    return w;
  }
};

namespace detail {

inline void require_spectral_context(const FieldContext& ctx) {
  if (!ctx.has_tables())
    throw std::invalid_argument("spectral analysis needs a verified primitive field with L <= " +
                                std::to_string(FieldContext::kMaxTableDegree));
}

// alpha^e for any exponent, as a table lookup.
inline std::uint32_t alpha_pow(const FieldContext& ctx, std::uint64_t e) { return ctx.exp_table(e % ctx.small_order()); }

inline std::uint32_t small_mul(const FieldContext& ctx, std::uint32_t a, std::uint32_t b) {
  if (a == 0 || b == 0) return 0;
  return ctx.exp_table((std::uint64_t{ctx.log_table(a)} + ctx.log_table(b)) % ctx.small_order());
}

}  // namespace detail

// Direct transform over one period, one inner product per coset leader.
inline Spectrum dft(std::span<const std::uint8_t> z, const FieldContext& ctx) {
  detail::require_spectral_context(ctx);
  const std::uint64_t n = ctx.small_order();
  if (z.size() != n)
    throw std::invalid_argument("spectrum needs exactly 2^L - 1 = " + std::to_string(n) + " bits, got " +
                                std::to_string(z.size()));
  Spectrum s{ctx, {}};
  for (auto& coset : all_cosets(ctx.degree())) {
    const std::uint64_t j = coset.leader % n;
    const std::uint64_t step = (n - j) % n;  // exponent -j
    std::uint64_t idx = 0;
    std::uint32_t acc = 0;
    for (std::uint64_t t = 0; t < n; ++t) {
      if (z[t] & 1U) acc ^= ctx.exp_table(idx);
      idx += step;
      if (idx >= n) idx -= n;
    }
    if (acc != 0) s.lines.emplace(coset.leader, SpectralLine{std::move(coset), ctx.element(acc)});
  }
  return s;
}

// z_n from the spectrum; each coset term is a Frobenius orbit sum, so it lies in GF(2).
inline int reconstruct(const Spectrum& s, std::uint64_t n) {
  detail::require_spectral_context(s.ctx);
  const std::uint64_t order = s.ctx.small_order();
  std::uint32_t total = 0;
  for (const auto& [leader, line] : s.lines) {
    std::uint32_t term = detail::small_mul(
        s.ctx, static_cast<std::uint32_t>(line.coefficient.bits().to_u64()),
        detail::alpha_pow(s.ctx, (leader % order) * (n % order)));
    for (int j = 0; j < line.coset.cardinal; ++j) {
      total ^= term;
      term = detail::small_mul(s.ctx, term, term);
    }
  }
  if (total > 1) throw std::logic_error("reconstructed term left GF(2); spectrum is not conjugate-closed");
  return static_cast<int>(total);
}

inline std::vector<std::uint8_t> reconstruct_period(const Spectrum& s) {
  std::vector<std::uint8_t> z(s.ctx.small_order());
  for (std::uint64_t n = 0; n < z.size(); ++n) z[n] = static_cast<std::uint8_t>(reconstruct(s, n));
  return z;
}

// Every coefficient satisfies C^(2^r) = C, i.e. lies in GF(2^r) for its coset cardinal r.
inline bool verify_subfield(const Spectrum& s) {
  for (const auto& [leader, line] : s.lines) {
    FieldElement c = line.coefficient;
    for (int j = 0; j < line.coset.cardinal; ++j) c = frobenius(s.ctx, c);
    if (c != line.coefficient) return false;
  }
  return true;
}

inline std::uint64_t lc_from_spectrum(const Spectrum& s) {
  std::uint64_t lc = 0;
  for (const auto& [leader, line] : s.lines) lc += line.coset.cardinal;
  return lc;
}

// lcm of the coset periods present; nullopt for the empty (all-zero) spectrum.
inline std::optional<std::uint64_t> period_from_spectrum(const Spectrum& s) {
  if (s.lines.empty()) return std::nullopt;
  std::uint64_t p = 1;
  for (const auto& [leader, line] : s.lines) p = std::lcm(p, coset_period(line.coset, s.ctx.degree()));
  return p;
}

// All cosets of weight 1..k carry a line.
inline bool has_all_lines_up_to(const Spectrum& s, int k) {
  for (const auto& c : cosets_up_to_weight(s.ctx.degree(), k))
    if (!s.lines.contains(c.leader)) return false;
  return true;
}

}  // namespace filtropt
