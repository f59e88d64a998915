#pragma once

// GF(2^L) arithmetic in the polynomial basis of a primitive modulus.
// The generator alpha is fixed to the residue class of x.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "filtropt/common.hpp"
#include "filtropt/gf2_bits.hpp"

namespace filtropt {

namespace detail {

inline Gf2Bits poly_mod(Gf2Bits a, const Gf2Bits& m) {
  const int dm = m.degree();
  if (dm < 0) throw std::domain_error("polynomial reduction by zero");
  for (int d = a.degree(); d >= dm; d = a.degree()) a ^= m.shifted_left(d - dm);
  return a;
}

// a*b mod m, with deg a, deg b < L = deg m.
inline Gf2Bits poly_mulmod(Gf2Bits a, const Gf2Bits& b, const Gf2Bits& m, int L) {
  Gf2Bits r;
  const int db = b.degree();
  for (int i = 0; i <= db; ++i) {
    if (b.test(i)) r ^= a;
    a.shift_left_one();
    if (a.test(L)) a ^= m;
  }
  return r;
}

inline Gf2Bits poly_gcd(Gf2Bits a, Gf2Bits b) {
  while (!b.is_zero()) {
    a = poly_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

inline Gf2Bits poly_powmod(Gf2Bits a, BigInt e, const Gf2Bits& m, int L) {
  Gf2Bits r = Gf2Bits::from_u64(1);
  while (e > 0) {
    if (bit_test(e, 0)) r = poly_mulmod(r, a, m, L);
    a = poly_mulmod(a, a, m, L);
    e >>= 1;
  }
  return r;
}

inline std::vector<int> prime_divisors(int n) {
  std::vector<int> out;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline void check_modulus_shape(int L, const Gf2Bits& poly) {
  if (L < 2 || L >= Gf2Bits::kCapacity)
    throw std::invalid_argument("degree L=" + std::to_string(L) + " out of supported range");
  if (poly.degree() != L)
    throw std::invalid_argument("polynomial " + poly.to_hex() + " does not have degree " + std::to_string(L));
}

}  // namespace detail

// Rabin's test: x^(2^L) = x mod f and gcd(x^(2^(L/q)) - x, f) = 1 for every prime q | L.
inline bool is_irreducible(int L, const Gf2Bits& poly) {
  detail::check_modulus_shape(L, poly);
  if (!poly.test(0)) return false;
  const Gf2Bits x = Gf2Bits::monomial(1);
  auto frobenius_power = [&](int times) {
    Gf2Bits t = x;
    for (int i = 0; i < times; ++i) t = detail::poly_mulmod(t, t, poly, L);
    return t;
  };
  if (frobenius_power(L) != x) return false;
  for (int q : detail::prime_divisors(L)) {
    const Gf2Bits g = detail::poly_gcd(poly, frobenius_power(L / q) ^ x);
    if (g.degree() != 0) return false;
  }
  return true;
}

// factorization lists the primes of 2^L - 1 with multiplicity.
inline bool is_primitive(int L, const Gf2Bits& poly, std::span<const BigInt> factorization) {
  detail::check_modulus_shape(L, poly);
  const BigInt order = pow2(L) - 1;
  BigInt product = 1;
  for (const auto& p : factorization) {
    if (p < 2) throw std::invalid_argument("factor " + p.str() + " is not a prime candidate");
    product *= p;
  }
  if (product != order)
    throw std::invalid_argument("factorization product " + product.str() + " != 2^" + std::to_string(L) + " - 1");
  if (!is_irreducible(L, poly)) return false;
  const Gf2Bits x = Gf2Bits::monomial(1);
  const Gf2Bits one = Gf2Bits::from_u64(1);
  if (detail::poly_powmod(x, order, poly, L) != one) return false;
  const std::set<BigInt> distinct(factorization.begin(), factorization.end());
  for (const auto& p : distinct)
    if (detail::poly_powmod(x, order / p, poly, L) == one) return false;
  return true;
}

class FieldContext;

class FieldElement {
 public:
  FieldElement() = default;

  const Gf2Bits& bits() const { return bits_; }
  bool is_zero() const { return bits_.is_zero(); }
  bool is_one() const { return bits_ == Gf2Bits::from_u64(1); }
  std::uint64_t field_id() const { return field_id_; }
  std::string to_hex() const { return bits_.to_hex(); }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  friend class FieldContext;
  FieldElement(Gf2Bits bits, std::uint64_t id) : bits_(bits), field_id_(id) {}

  Gf2Bits bits_;
  std::uint64_t field_id_ = 0;
};

class FieldContext {
 public:
  // Fields up to this degree get exp/log tables for the spectral layer.
  static constexpr int kMaxTableDegree = 16;

  FieldContext(int L, Gf2Bits modulus, std::optional<std::vector<BigInt>> factorization = std::nullopt)
      : L_(L), modulus_(modulus), order_(pow2(L) - 1), factorization_(std::move(factorization)) {
    detail::check_modulus_shape(L, modulus);
    if (!modulus.test(0)) throw std::invalid_argument("modulus " + modulus.to_hex() + " has zero constant term");
    if (factorization_) {
      if (!is_primitive(L, modulus, *factorization_))
        throw std::invalid_argument("modulus " + modulus.to_hex() + " is not primitive");
      verified_ = true;
    }
    std::uint64_t h = mix64(static_cast<std::uint64_t>(L));
    for (int w = 0; w < Gf2Bits::kWords; ++w) h = mix64(h ^ modulus.word(w));
    id_ = h;
    if (verified_ && L <= kMaxTableDegree) build_tables();
  }

  int degree() const { return L_; }
  const Gf2Bits& modulus() const { return modulus_; }
  const BigInt& order() const { return order_; }
  const std::optional<std::vector<BigInt>>& factorization() const { return factorization_; }
  bool verified_primitive() const { return verified_; }
  std::uint64_t id() const { return id_; }

  FieldElement element(const Gf2Bits& bits) const { return FieldElement(detail::poly_mod(bits, modulus_), id_); }
  FieldElement element(std::uint64_t bits) const { return element(Gf2Bits::from_u64(bits)); }
  FieldElement zero() const { return FieldElement(Gf2Bits{}, id_); }
  FieldElement one() const { return element(1); }
  FieldElement alpha() const { return element(Gf2Bits::monomial(1)); }

  bool has_tables() const { return tables_ != nullptr; }
  std::uint64_t small_order() const { return mersenne(L_); }
  // alpha^n as an integer bit pattern, n in [0, 2^L - 2]. Requires has_tables().
  std::uint32_t exp_table(std::uint64_t n) const { return tables_->exp[n]; }
  // Discrete log of a nonzero pattern. Requires has_tables().
  std::uint32_t log_table(std::uint32_t v) const { return tables_->log[v]; }

  void check(const FieldElement& a) const {
    if (a.field_id() != id_) throw std::invalid_argument("field element belongs to a different context");
  }

 private:
  struct Tables {
    std::vector<std::uint32_t> exp;
    std::vector<std::uint32_t> log;
  };

  void build_tables() {
    auto t = std::make_shared<Tables>();
    const std::uint64_t n = mersenne(L_);
    const std::uint32_t m = static_cast<std::uint32_t>(modulus_.to_u64());
    t->exp.resize(n);
    t->log.assign(n + 1, 0);
    std::uint32_t v = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      t->exp[i] = v;
      t->log[v] = static_cast<std::uint32_t>(i);
      v <<= 1;
      if (v >> L_) v ^= m;
    }
    tables_ = std::move(t);
  }

  int L_;
  Gf2Bits modulus_;
  BigInt order_;
  std::optional<std::vector<BigInt>> factorization_;
  bool verified_ = false;
  std::uint64_t id_ = 0;
  std::shared_ptr<const Tables> tables_;
};

inline FieldElement add(const FieldContext& ctx, const FieldElement& a, const FieldElement& b) {
  ctx.check(a);
  ctx.check(b);
  return ctx.element(a.bits() ^ b.bits());
}

inline FieldElement mul(const FieldContext& ctx, const FieldElement& a, const FieldElement& b) {
  ctx.check(a);
  ctx.check(b);
  return ctx.element(detail::poly_mulmod(a.bits(), b.bits(), ctx.modulus(), ctx.degree()));
}

inline FieldElement frobenius(const FieldContext& ctx, const FieldElement& a) { return mul(ctx, a, a); }

// Negative exponents are reduced modulo the group order; pow(0, e < 0) throws.
inline FieldElement pow(const FieldContext& ctx, const FieldElement& a, BigInt e) {
  ctx.check(a);
  if (a.is_zero()) {
    if (e < 0) throw std::domain_error("zero has no inverse");
    return e == 0 ? ctx.one() : ctx.zero();
  }
  e %= ctx.order();
  if (e < 0) e += ctx.order();
  return ctx.element(detail::poly_powmod(a.bits(), e, ctx.modulus(), ctx.degree()));
}

inline FieldElement pow(const FieldContext& ctx, const FieldElement& a, long long e) {
  return pow(ctx, a, BigInt(e));
}

inline FieldElement inverse(const FieldContext& ctx, const FieldElement& a) {
  if (a.is_zero()) throw std::domain_error("zero has no inverse");
  return pow(ctx, a, BigInt(-1));
}

// Absolute trace: sum of the L Frobenius conjugates of a.
inline int trace(const FieldContext& ctx, const FieldElement& a) {
  ctx.check(a);
  FieldElement t = a;
  Gf2Bits sum = a.bits();
  for (int j = 1; j < ctx.degree(); ++j) {
    t = frobenius(ctx, t);
    sum ^= t.bits();
  }
  if (sum.degree() > 0) throw std::logic_error("trace left GF(2); modulus is not irreducible");
  return sum.is_zero() ? 0 : 1;
}

}  // namespace filtropt
