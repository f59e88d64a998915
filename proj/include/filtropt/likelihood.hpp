#pragma once

// Probability that a uniformly chosen order-k filter reaches maximum linear
// complexity, together with the product and exponential reference bounds.
//
//   nfk = (2^C(L,k) - 1) * 2^(N_k - C(L,k))
//   nfm = prod over cosets of weight <= k of (2^r - 1)
//   Pr  = nfm / nfk
//
// Reference quantities:
//   bound_product    = nfm / 2^N_k = prod (1 - 2^-r)   ((1 - 2^-L)^(N_k/L) for prime L)
//   bound_general    = exp(-N_k / (2^L L))
//   bound_asymptotic = exp(-1 / (2L))
//
// Pr > bound_product always (the ratio is 2^C / (2^C - 1)). bound_general is
// the exponential approximation and sits *above* bound_product; Pr may fall
// on either side of it, so the report states the sign with a certified margin
// rather than assuming it.
//
// Log-domain values use 120 significant decimal digits. Margins between the
// quantities can be far below that resolution (2^-C(L,k)), so they are kept
// as mantissa * 2^exponent with an arbitrary-precision exponent.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include <boost/math/special_functions/log1p.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "filtropt/anf.hpp"
#include "filtropt/common.hpp"
#include "filtropt/cosets.hpp"

namespace filtropt {

inline constexpr unsigned kReportDigits = 120;
using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<kReportDigits>,
                                           boost::multiprecision::et_off>;
using Rational = boost::multiprecision::cpp_rational;

// Exponent differences beyond this many bits are below Real resolution.
inline constexpr long kNegligibleBits = 512;

inline std::string format_real(const Real& x, int digits = 60) { return x.str(digits, std::ios_base::fmtflags{}); }

// sign * mantissa * 2^exponent2 with mantissa in [0.5, 1).
struct ScaledReal {
  int sign = 0;
  Real mantissa = 0;
  BigInt exponent2 = 0;

  static ScaledReal from_real(const Real& x) {
    ScaledReal s;
    if (x == 0) return s;
    s.sign = x > 0 ? 1 : -1;
    int e = 0;
    s.mantissa = boost::multiprecision::frexp(boost::multiprecision::abs(x), &e);
    s.exponent2 = e;
    return s;
  }

  // Exact 2^e scaled by mantissa m in [0.5, 1).
  static ScaledReal power_of_two(const BigInt& e, const Real& m = Real(0.5)) {
    ScaledReal s;
    s.sign = 1;
    s.mantissa = m;
    s.exponent2 = e + 1;
    return s;
  }

  bool representable() const {
    return sign == 0 || (exponent2 > -1000000000 && exponent2 < 1000000000);
  }

  // 0 when the magnitude underflows Real.
  Real to_real() const {
    if (sign == 0 || !representable()) return 0;
    return sign * boost::multiprecision::ldexp(mantissa, exponent2.convert_to<int>());
  }

  // log10 |value|.
  Real log10_abs() const {
    static const Real kLog10Two = boost::multiprecision::log10(Real(2));
    return boost::multiprecision::log10(mantissa) + Real(exponent2) * kLog10Two;
  }
};

// a - b for positive a, b.
inline ScaledReal scaled_difference(const ScaledReal& a, const ScaledReal& b) {
  if (b.sign == 0) return a;
  if (a.sign == 0) {
    ScaledReal r = b;
    r.sign = -b.sign;
    return r;
  }
  const BigInt gap = a.exponent2 - b.exponent2;
  if (gap > kNegligibleBits) return a;
  if (gap < -kNegligibleBits) {
    ScaledReal r = b;
    r.sign = -1;
    return r;
  }
  const BigInt e0 = a.exponent2 > b.exponent2 ? a.exponent2 : b.exponent2;
  const Real ma = boost::multiprecision::ldexp(a.mantissa, (a.exponent2 - e0).convert_to<int>());
  const Real mb = boost::multiprecision::ldexp(b.mantissa, (b.exponent2 - e0).convert_to<int>());
  ScaledReal r = ScaledReal::from_real(ma - mb);
  if (r.sign != 0) r.exponent2 += e0;
  return r;
}

namespace detail {

// ln(1 - 2^-d)
inline Real log1m_pow2(const BigInt& d) {
  if (d > 4 * static_cast<long>(kReportDigits)) {
    // Series -x - x^2/2: the second term is already below resolution relative to the first.
    if (d > 1000000000) return 0;
    return -boost::multiprecision::ldexp(Real(1), -d.convert_to<int>());
  }
  return boost::math::log1p(-boost::multiprecision::ldexp(Real(1), -d.convert_to<int>()));
}

// -ln(1 - 2^-d) as a scaled positive value, valid for any d >= 1.
inline ScaledReal neg_log1m_pow2_scaled(const BigInt& d) {
  if (d <= 1000000) return ScaledReal::from_real(-log1m_pow2(d));
  // 2^-d (1 + 2^-d/2 + ...): the correction is below any finite precision here.
  return ScaledReal::power_of_two(-d);
}

// sum_{m>=2} x^m / m for x = 2^-d, i.e. -ln(1-x) - x.
inline Real log_series_tail(int d) {
  const Real x = boost::multiprecision::ldexp(Real(1), -d);
  Real term = x * x, sum = 0;
  const Real eps = boost::multiprecision::ldexp(Real(1), -4 * static_cast<int>(kReportDigits));
  for (int m = 2; term > eps * sum || m == 2; ++m) {
    sum += term / m;
    term *= x;
  }
  return sum;
}

}  // namespace detail

// nfm: exact product of (2^r - 1) over the cosets of weight <= k.
inline BigInt nfm(int L, int k) {
  const BigInt maxlc = nk(L, k);
  if (maxlc > kExactBitBudget)
    throw std::length_error("nfm(" + std::to_string(L) + "," + std::to_string(k) +
                            ") exceeds the exact bit budget; use pr_report log-domain mode");
  BigInt out = 1;
  for (const auto& [key, count] : coset_census(L, k).count)
    out *= boost::multiprecision::pow(pow2(key.first) - 1, count.convert_to<unsigned>());
  return out;
}

// nfm / nfk in lowest terms.
inline Rational pr_exact(int L, int k) {
  if (nk(L, k) > kExactBitBudget)
    throw std::length_error("pr_exact(" + std::to_string(L) + "," + std::to_string(k) +
                            ") exceeds the exact bit budget; use pr_report for log-domain evaluation");
  return Rational(nfm(L, k), count_filters(L, k));
}

enum class LikelihoodMode { exact, log_domain };

inline const char* to_string(LikelihoodMode m) { return m == LikelihoodMode::exact ? "exact" : "log-domain"; }

struct LikelihoodReport {
  int L = 0;
  int k = 0;
  BigInt n_cosets;   // N
  BigInt nk_value;   // N_k
  std::optional<BigInt> nfm;
  std::optional<BigInt> nfk;
  Real log2_nfm;
  Real log2_nfk;
  std::optional<Rational> pr_exact;
  Real ln_pr;
  Real pr_float;
  Real bound_product;
  Real bound_general;
  std::optional<Real> bound_asymptotic;
  LikelihoodMode mode = LikelihoodMode::log_domain;

  // ln Pr - ln bound_product (> 0).
  ScaledReal margin_pr_over_product;
  // ln bound_general - ln bound_product (> 0).
  ScaledReal margin_general_over_product;
  // ln Pr - ln bound_general (either sign).
  ScaledReal margin_pr_over_general;
  // ln Pr rebuilt as ln bound_general - margin_general_over_product + margin_pr_over_product.
  Real ln_pr_via_bounds;
  // Significant digits to which the two ln Pr routes agree.
  Real route_agreement_digits;
  // Sign of ln Pr - ln bound_general by direct subtraction at full precision.
  int direct_general_sign = 0;

  bool exceeds_bound_product() const { return margin_pr_over_product.sign > 0; }
  bool exceeds_bound_general() const { return margin_pr_over_general.sign > 0; }
};

struct ReportOptions {
  bool include_asymptotic = false;  // otherwise only when k is floor or ceil of L/2
  bool require_exact = false;       // throw if exact mode is infeasible
};

inline LikelihoodReport pr_report(int L, int k, ReportOptions opts = {}) {
  require_order(L, k);
  if (L < 2 || L >= Gf2Bits::kCapacity) throw std::out_of_range("L out of supported range");
  LikelihoodReport r;
  r.L = L;
  r.k = k;
  const CosetCensus census = coset_census(L, k);
  r.n_cosets = census.total();
  r.nk_value = nk(L, k);
  const BigInt top = binomial(L, k);
  static const Real kLn2 = boost::multiprecision::log(Real(2));

  Real ln_product = 0;
  r.log2_nfm = 0;
  bool all_cardinals_equal_L = true;
  for (const auto& [key, count] : census.count) {
    const Real l = detail::log1m_pow2(key.first);
    ln_product += Real(count) * l;
    r.log2_nfm += Real(count) * (key.first + l / kLn2);
    if (key.first != L) all_cardinals_equal_L = false;
  }
  r.bound_product = boost::multiprecision::exp(ln_product);
  r.log2_nfk = Real(r.nk_value) + detail::log1m_pow2(top) / kLn2;

  r.margin_pr_over_product = detail::neg_log1m_pow2_scaled(top);
  r.ln_pr = ln_product + r.margin_pr_over_product.to_real();
  r.pr_float = boost::multiprecision::exp(r.ln_pr);

  const Real ln_general = -Real(r.nk_value) / (boost::multiprecision::ldexp(Real(1), L) * L);
  r.bound_general = boost::multiprecision::exp(ln_general);

  if (all_cardinals_equal_L) {
    // ln bound_general - ln bound_product = N * sum_{m>=2} 2^{-mL} / m, free of cancellation.
    r.margin_general_over_product = ScaledReal::from_real(Real(r.n_cosets) * detail::log_series_tail(L));
  } else {
    r.margin_general_over_product = ScaledReal::from_real(ln_general - ln_product);
  }
  r.margin_pr_over_general = scaled_difference(r.margin_pr_over_product, r.margin_general_over_product);
  r.ln_pr_via_bounds =
      ln_general - r.margin_general_over_product.to_real() + r.margin_pr_over_product.to_real();

  const Real scale = std::max(boost::multiprecision::abs(r.ln_pr), boost::multiprecision::abs(ln_general));
  const Real diff = boost::multiprecision::abs(r.ln_pr - r.ln_pr_via_bounds);
  r.route_agreement_digits = diff == 0 ? Real(kReportDigits) : -boost::multiprecision::log10(diff / scale);
  const Real direct = r.ln_pr - ln_general;
  r.direct_general_sign = direct > 0 ? 1 : (direct < 0 ? -1 : 0);

  if (opts.include_asymptotic || std::abs(2 * k - L) <= 1)
    r.bound_asymptotic = boost::multiprecision::exp(Real(-1) / (2 * L));

  if (r.nk_value <= kExactBitBudget) {
    r.mode = LikelihoodMode::exact;
    r.nfm = nfm(L, k);
    r.nfk = count_filters(L, k);
    r.pr_exact = Rational(*r.nfm, *r.nfk);
    r.pr_float = Real(*r.nfm) / Real(*r.nfk);
  } else if (opts.require_exact) {
    throw std::length_error("exact evaluation of L=" + std::to_string(L) + ", k=" + std::to_string(k) +
                            " exceeds the " + std::to_string(kExactBitBudget) + "-bit budget");
  }
  return r;
}

}  // namespace filtropt
