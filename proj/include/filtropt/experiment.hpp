#pragma once

// Empirical census of filter outputs: exhaustive over the whole filter space
// for small (L, k), seeded Monte Carlo otherwise.
//
// Every trial is a pure function of its index (and the master seed), and the
// summary is a sum of per-trial counters, so results do not depend on the
// number of worker threads.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "filtropt/anf.hpp"
#include "filtropt/complexity.hpp"
#include "filtropt/cosets.hpp"
#include "filtropt/lfsr.hpp"
#include "filtropt/likelihood.hpp"
#include "filtropt/spectral.hpp"

namespace filtropt {

enum class ExperimentMode { exhaustive, monte_carlo };

inline const char* to_string(ExperimentMode m) { return m == ExperimentMode::exhaustive ? "exhaustive" : "monte-carlo"; }

inline constexpr std::uint64_t kDefaultTrials = 20000;
inline constexpr int kMaxMonteCarloDegree = 16;
// Spectral cross-checks run per trial up to this L.
inline constexpr int kMaxSpectralSpotDegree = 11;

struct TrialRecord {
  std::uint64_t index = 0;
  FilterFunction filter;
  int lc = 0;
  std::uint64_t period = 0;
  bool is_max = false;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct ExperimentSummary {
  int L = 0;
  int k = 0;
  ExperimentMode mode = ExperimentMode::exhaustive;
  std::uint64_t trials = 0;
  std::uint64_t hits_max_lc = 0;
  std::uint64_t hits_max_period = 0;
  std::uint64_t max_lc_target = 0;
  double empirical_pr = 0;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
  std::optional<std::uint64_t> seed;
  double analytic_pr = 0;
  double z_score = 0;
  // Max-lc trials whose measured period is not 2^L - 1 (expected 0).
  std::uint64_t max_lc_without_max_period = 0;
  // Per-trial agreement between BM/min_period and the spectral route.
  std::uint64_t spectral_checked = 0;
  std::uint64_t spectral_mismatches = 0;
  std::vector<TrialRecord> records;  // filled on request

  friend bool operator==(const ExperimentSummary&, const ExperimentSummary&) = default;
};

struct ExperimentOptions {
  unsigned jobs = 1;
  bool keep_records = false;
  // Cross-check each trial against the spectrum; defaults to on for L <= kMaxSpectralSpotDegree.
  std::optional<bool> spectral_check;
  std::uint64_t enumeration_cap = FilterSpace::kDefaultCap;
};

// Seed of trial i: a fixed counter-based mix of (master seed, i).
constexpr std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) ^ (index * 0xD1B54A32D192ED03ULL));
}

// 95% Wilson score interval.
inline std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t n) {
  static const double z = boost::math::quantile(boost::math::normal(), 0.975);
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  const double denom = 1 + z * z / nn;
  const double centre = (p + z * z / (2 * nn)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

// Standard error implied by the Wilson interval.
inline double wilson_sigma(double lo, double hi) {
  static const double z = boost::math::quantile(boost::math::normal(), 0.975);
  return (hi - lo) / (2 * z);
}

namespace detail {

struct Tally {
  std::uint64_t hits_max_lc = 0;
  std::uint64_t hits_max_period = 0;
  std::uint64_t max_lc_without_max_period = 0;
  std::uint64_t spectral_checked = 0;
  std::uint64_t spectral_mismatches = 0;

  Tally& operator+=(const Tally& o) {
    hits_max_lc += o.hits_max_lc;
    hits_max_period += o.hits_max_period;
    max_lc_without_max_period += o.max_lc_without_max_period;
    spectral_checked += o.spectral_checked;
    spectral_mismatches += o.spectral_mismatches;
    return *this;
  }
};

template <class MakeFilter>
ExperimentSummary run_trials(int L, int k, std::uint64_t trials, const FieldContext& ctx,
                             const ExperimentOptions& opts, MakeFilter make_filter) {
  if (ctx.degree() != L) throw std::invalid_argument("field context degree does not match L");
  const LfsrGenerator gen(ctx);
  const std::vector<std::uint64_t> windows = gen.period_windows();
  const std::uint64_t full_period = gen.period();
  const std::uint64_t target = nk(L, k).convert_to<std::uint64_t>();
  const bool spectral = opts.spectral_check.value_or(L <= kMaxSpectralSpotDegree) && ctx.has_tables();

  ExperimentSummary s;
  s.L = L;
  s.k = k;
  s.trials = trials;
  s.max_lc_target = target;
  if (opts.keep_records) s.records.resize(trials);

  const unsigned jobs = std::max(1U, std::min<unsigned>(opts.jobs, static_cast<unsigned>(std::max<std::uint64_t>(trials, 1))));
  std::vector<Tally> partial(jobs);
  auto work = [&](unsigned w) {
    Tally& t = partial[w];
    for (std::uint64_t i = w; i < trials; i += jobs) {
      const FilterFunction f = make_filter(i);
      const auto z = filter_windows(f, windows);
      const int lc = linear_complexity_periodic(z);
      const std::uint64_t period = min_period(z);
      const bool is_max = static_cast<std::uint64_t>(lc) == target;
      t.hits_max_lc += is_max;
      t.hits_max_period += period == full_period;
      t.max_lc_without_max_period += is_max && period != full_period;
      if (spectral) {
        const Spectrum sp = dft(z, ctx);
        ++t.spectral_checked;
        const auto sp_period = period_from_spectrum(sp);
        if (lc_from_spectrum(sp) != static_cast<std::uint64_t>(lc) || !sp_period || *sp_period != period ||
            !verify_subfield(sp))
          ++t.spectral_mismatches;
      }
      if (opts.keep_records) s.records[i] = TrialRecord{i, f, lc, period, is_max};
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
  }
  Tally total;
  for (const auto& t : partial) total += t;
  s.hits_max_lc = total.hits_max_lc;
  s.hits_max_period = total.hits_max_period;
  s.max_lc_without_max_period = total.max_lc_without_max_period;
  s.spectral_checked = total.spectral_checked;
  s.spectral_mismatches = total.spectral_mismatches;
  s.empirical_pr = static_cast<double>(s.hits_max_lc) / static_cast<double>(trials);
  s.analytic_pr = pr_report(L, k).pr_float.convert_to<double>();
  return s;
}

}  // namespace detail

inline ExperimentSummary run_exhaustive(int L, int k, const FieldContext& ctx, const ExperimentOptions& opts = {}) {
  const FilterSpace space(L, k, opts.enumeration_cap);
  ExperimentSummary s =
      detail::run_trials(L, k, space.size(), ctx, opts, [&](std::uint64_t i) { return space.at(i); });
  s.mode = ExperimentMode::exhaustive;
  // Exact comparison against the closed form; the interval is degenerate.
  s.z_score = BigInt(s.hits_max_lc) == nfm(L, k) ? 0.0 : std::copysign(INFINITY, s.empirical_pr - s.analytic_pr);
  return s;
}

inline ExperimentSummary run_monte_carlo(int L, int k, std::uint64_t trials, std::uint64_t seed,
                                         const FieldContext& ctx, const ExperimentOptions& opts = {}) {
  require_order(L, k);
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (L > kMaxMonteCarloDegree)
    throw std::out_of_range("Monte Carlo needs L <= " + std::to_string(kMaxMonteCarloDegree) +
                            "; use the analytic report for larger L");
  ExperimentSummary s = detail::run_trials(L, k, trials, ctx, opts, [&](std::uint64_t i) {
    std::mt19937_64 rng(trial_seed(seed, i));
    return random_filter(L, k, rng);
  });
  s.mode = ExperimentMode::monte_carlo;
  s.seed = seed;
  const auto [lo, hi] = wilson_interval(s.hits_max_lc, trials);
  s.ci_low = lo;
  s.ci_high = hi;
  s.z_score = (s.empirical_pr - s.analytic_pr) / wilson_sigma(lo, hi);
  return s;
}

struct Verdict {
  std::optional<bool> exact_match;     // exhaustive: hits_max_lc == nfm
  std::optional<bool> within_3_sigma;  // monte carlo: |z| <= 3
  bool bound_respected = false;        // empirical_pr > bound_general - 3 sigma
  bool max_period_corollary = false;   // every max-lc trial has period 2^L - 1

  // Gate used for exit codes: the exact/statistical match and the period corollary.
  bool passed() const {
    const bool match = exact_match.value_or(true) && within_3_sigma.value_or(true);
    return match && max_period_corollary;
  }
};

inline Verdict compare(const ExperimentSummary& s, const LikelihoodReport& report) {
  if (s.L != report.L || s.k != report.k)
    throw std::invalid_argument("summary (L,k) does not match report (L,k)");
  Verdict v;
  double sigma = 0;
  const double analytic = report.pr_float.convert_to<double>();
  if (s.mode == ExperimentMode::exhaustive) {
    if (report.nfm) v.exact_match = BigInt(s.hits_max_lc) == *report.nfm;
    else v.exact_match = false;
  } else {
    sigma = wilson_sigma(*s.ci_low, *s.ci_high);
    v.within_3_sigma = std::abs(s.empirical_pr - analytic) <= 3 * sigma;
  }
  v.bound_respected = s.empirical_pr > report.bound_general.convert_to<double>() - 3 * sigma;
  v.max_period_corollary = s.max_lc_without_max_period == 0;
  return v;
}

}  // namespace filtropt
