#pragma once

// Subcommand dispatch for the filtropt command-line tool.
//
// Exit codes: 0 success, 1 validation error, 2 acceptance comparison failed.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "filtropt/anf.hpp"
#include "filtropt/complexity.hpp"
#include "filtropt/cosets.hpp"
#include "filtropt/experiment.hpp"
#include "filtropt/field.hpp"
#include "filtropt/lfsr.hpp"
#include "filtropt/likelihood.hpp"
#include "filtropt/poly_table.hpp"
#include "filtropt/spectral.hpp"

namespace filtropt::cli {

using Json = nlohmann::ordered_json;

enum class Subcommand { cosets, lc, analyze, prob, enumerate, sample };
enum class OutputFormat { json, csv, human };

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitComparison = 2;

struct RunConfig {
  Subcommand subcommand = Subcommand::prob;
  int L = 0;
  int k = 0;
  std::optional<std::string> poly;     // hex modulus
  std::optional<std::string> factors;  // "p1,p2,..." or "@file"
  std::optional<std::string> seed_state;
  std::optional<std::string> filter_anf;
  std::optional<std::string> bits;  // "0101..." or "@file"
  std::uint64_t trials = kDefaultTrials;
  std::uint64_t seed = 1;
  bool exact = false;
  bool asymptotic = false;
  std::optional<double> assert_min;
  unsigned jobs = 1;
  OutputFormat output = OutputFormat::json;
  std::optional<std::string> out_path;
  std::optional<std::string> csv_path;
};

// Validation failure; the message names the offending flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string read_text_arg(const std::string& value, const std::string& flag) {
  if (!value.starts_with("@")) return value;
  std::ifstream in(value.substr(1));
  if (!in) throw UsageError(flag + ": cannot open " + value.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline FieldContext resolve_field(const RunConfig& cfg) {
  if (cfg.L < 2 || cfg.L >= Gf2Bits::kCapacity) throw UsageError("--length: L=" + std::to_string(cfg.L) + " out of range");
  std::vector<PolyTableEntry> table;
  try {
    table = load_poly_table();
  } catch (const std::exception& e) {
    throw UsageError(std::string("FILTROPT_POLY_TABLE: ") + e.what());
  }
  const auto entry = find_entry(table, cfg.L);
  std::optional<std::vector<BigInt>> factors;
  if (cfg.factors) {
    try {
      factors = parse_factor_list(read_text_arg(*cfg.factors, "--factors"));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--factors: ") + e.what());
    }
  } else if (entry) {
    factors = entry->factors;
  }
  Gf2Bits modulus;
  if (cfg.poly) {
    try {
      modulus = Gf2Bits::from_hex(*cfg.poly);
    } catch (const std::invalid_argument& e) {
      throw UsageError("--poly: " + std::string(e.what()));
    }
    if (!factors)
      throw UsageError("--poly: no factorization of 2^" + std::to_string(cfg.L) +
                       " - 1 on record; pass --factors to verify the polynomial");
  } else {
    if (!entry)
      throw UsageError("--length: no primitive polynomial on record for L=" + std::to_string(cfg.L) +
                       "; pass --poly and --factors");
    modulus = entry->modulus;
  }
  try {
    if (!is_primitive(cfg.L, modulus, *factors))
      throw UsageError("--poly: " + modulus.to_hex() + " is not primitive for L=" + std::to_string(cfg.L));
  } catch (const std::invalid_argument& e) {
    throw UsageError((cfg.factors ? "--factors: " : "--poly: ") + std::string(e.what()));
  }
  return FieldContext(cfg.L, modulus, factors);
}

inline void require_order_flag(const RunConfig& cfg, const char* flag) {
  if (cfg.k < 1 || cfg.k > cfg.L)
    throw UsageError(std::string(flag) + ": k=" + std::to_string(cfg.k) + " must lie in [1, " + std::to_string(cfg.L) + "]");
}

inline std::string rational_str(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

inline Json scaled_json(const ScaledReal& s) {
  Json j;
  j["sign"] = s.sign;
  if (s.sign != 0) j["log10_magnitude"] = format_real(s.log10_abs(), 40);
  if (s.sign != 0 && s.representable()) j["value"] = format_real(s.to_real(), 40);
  return j;
}

inline Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Report builders, one per subcommand.

inline Json cosets_json(int L, int k) {
  Json rows = Json::array();
  for (const auto& c : cosets_up_to_weight(L, k))
    rows.push_back({{"leader", c.leader}, {"cardinal", c.cardinal}, {"weight", c.weight}, {"period", coset_period(c, L)}});
  return Json{{"length", L}, {"max_weight", k}, {"n_cosets", rows.size()}, {"nk", nk(L, k).str()}, {"cosets", rows}};
}

inline Json lc_json(std::span<const std::uint8_t> bits) {
  const ComplexityResult r = berlekamp_massey(bits);
  return Json{{"length", bits.size()}, {"lc", r.lc}, {"minimal_poly_hex", r.poly_hex()}};
}

inline Json analyze_json(const FieldContext& ctx, const FilterFunction& f, std::uint64_t seed_state) {
  const LfsrGenerator gen(ctx, seed_state);
  const auto z = filter_sequence(f, gen, gen.period());
  const Spectrum s = dft(z, ctx);
  const int lc_bm = linear_complexity_periodic(z);
  const auto period_spectral = period_from_spectrum(s);
  Json lines = Json::array();
  for (const auto& [leader, line] : s.lines)
    lines.push_back({{"leader", leader},
                     {"weight", line.coset.weight},
                     {"cardinal", line.coset.cardinal},
                     {"coefficient_hex", line.coefficient.to_hex()}});
  return Json{{"length", ctx.degree()},
              {"order", f.order()},
              {"poly", ctx.modulus().to_hex()},
              {"filter", format_anf(f)},
              {"lc_bm", lc_bm},
              {"lc_spectral", lc_from_spectrum(s)},
              {"max_lc", nk(ctx.degree(), f.order()).str()},
              {"period_measured", min_period(z)},
              {"period_spectral", period_spectral ? Json(*period_spectral) : Json(nullptr)},
              {"subfield_ok", verify_subfield(s)},
              {"optimal", has_all_lines_up_to(s, f.order())},
              {"lines", lines}};
}

inline Json report_json(const LikelihoodReport& r) {
  Json j;
  j["length"] = r.L;
  j["order"] = r.k;
  j["mode"] = to_string(r.mode);
  j["n_cosets"] = r.n_cosets.str();
  j["nk"] = r.nk_value.str();
  j["nfm"] = r.nfm ? Json(r.nfm->str()) : Json(nullptr);
  j["nfk"] = r.nfk ? Json(r.nfk->str()) : Json(nullptr);
  j["log2_nfm"] = format_real(r.log2_nfm);
  j["log2_nfk"] = format_real(r.log2_nfk);
  j["pr_exact"] = r.pr_exact ? Json(detail::rational_str(*r.pr_exact)) : Json(nullptr);
  j["pr_float"] = format_real(r.pr_float);
  j["ln_pr"] = format_real(r.ln_pr);
  j["bound_product"] = format_real(r.bound_product);
  j["bound_general"] = format_real(r.bound_general);
  j["bound_asymptotic"] = r.bound_asymptotic ? Json(format_real(*r.bound_asymptotic)) : Json(nullptr);
  j["exceeds_bound_product"] = r.exceeds_bound_product();
  j["exceeds_bound_general"] = r.exceeds_bound_general();
  j["margin_pr_over_product"] = detail::scaled_json(r.margin_pr_over_product);
  j["margin_general_over_product"] = detail::scaled_json(r.margin_general_over_product);
  j["margin_pr_over_general"] = detail::scaled_json(r.margin_pr_over_general);
  j["route_agreement_digits"] = format_real(r.route_agreement_digits, 6);
  j["precision_digits"] = kReportDigits;
  return j;
}

inline Json summary_json(const ExperimentSummary& s, const Verdict& v) {
  Json j;
  j["length"] = s.L;
  j["order"] = s.k;
  j["mode"] = to_string(s.mode);
  j["trials"] = s.trials;
  j["seed"] = s.seed ? Json(*s.seed) : Json(nullptr);
  j["hits_max_lc"] = s.hits_max_lc;
  j["hits_max_period"] = s.hits_max_period;
  j["max_lc_target"] = s.max_lc_target;
  j["empirical_pr"] = s.empirical_pr;
  j["ci_low"] = s.ci_low ? Json(*s.ci_low) : Json(nullptr);
  j["ci_high"] = s.ci_high ? Json(*s.ci_high) : Json(nullptr);
  j["analytic_pr"] = s.analytic_pr;
  j["z_score"] = detail::number_or_null(s.z_score);
  j["max_lc_without_max_period"] = s.max_lc_without_max_period;
  j["spectral_checked"] = s.spectral_checked;
  j["spectral_mismatches"] = s.spectral_mismatches;
  j["verdict"] = {{"exact_match", v.exact_match ? Json(*v.exact_match) : Json(nullptr)},
                  {"within_3_sigma", v.within_3_sigma ? Json(*v.within_3_sigma) : Json(nullptr)},
                  {"bound_respected", v.bound_respected},
                  {"max_period_corollary", v.max_period_corollary},
                  {"passed", v.passed()}};
  return j;
}

// ---------------------------------------------------------------------------
// Output

namespace detail {

inline std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [key, v] : j.items()) flatten(v, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else {
    out.emplace_back(prefix, scalar_text(j));
  }
}

}  // namespace detail

// Flattened (path, value) pairs; this is the content of the CSV and human forms.
inline std::vector<std::pair<std::string, std::string>> flatten_report(const Json& j) {
  std::vector<std::pair<std::string, std::string>> out;
  detail::flatten(j, "", out);
  return out;
}

inline void write_report(const Json& j, Subcommand sub, OutputFormat fmt, std::ostream& os) {
  switch (fmt) {
    case OutputFormat::json:
      os << j.dump(2) << '\n';
      break;
    case OutputFormat::csv:
      if (sub == Subcommand::cosets) {
        os << "leader,cardinal,weight,period\n";
        for (const auto& row : j["cosets"])
          os << row["leader"].dump() << ',' << row["cardinal"].dump() << ',' << row["weight"].dump() << ','
             << row["period"].dump() << '\n';
      } else {
        os << "field,value\n";
        for (const auto& [path, value] : flatten_report(j))
          os << detail::csv_escape(path) << ',' << detail::csv_escape(value) << '\n';
      }
      break;
    case OutputFormat::human: {
      const auto flat = flatten_report(j);
      std::size_t width = 0;
      for (const auto& [path, value] : flat) width = std::max(width, path.size());
      for (const auto& [path, value] : flat)
        os << std::left << std::setw(static_cast<int>(width)) << path << "  " << value << '\n';
      break;
    }
  }
}

inline void write_trial_csv(const ExperimentSummary& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("--csv: cannot write " + path);
  out << "filter_anf,lc,period,is_max\n";
  for (const auto& r : s.records)
    out << detail::csv_escape(format_anf(r.filter)) << ',' << r.lc << ',' << r.period << ',' << (r.is_max ? 1 : 0)
        << '\n';
}

// ---------------------------------------------------------------------------

inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    Json report;
    int status = kExitOk;
    switch (cfg.subcommand) {
      case Subcommand::cosets: {
        if (cfg.L < 2 || cfg.L > 24) throw UsageError("--length: coset tables support 2 <= L <= 24");
        detail::require_order_flag(cfg, "--max-weight");
        report = cosets_json(cfg.L, cfg.k);
        break;
      }
      case Subcommand::lc: {
        if (!cfg.bits) throw UsageError("--bits: required");
        std::vector<std::uint8_t> bits;
        for (char c : detail::read_text_arg(*cfg.bits, "--bits")) {
          if (c == '0' || c == '1') bits.push_back(static_cast<std::uint8_t>(c - '0'));
          else if (!std::isspace(static_cast<unsigned char>(c)))
            throw UsageError(std::string("--bits: unexpected character '") + c + "'");
        }
        if (bits.empty()) throw UsageError("--bits: empty sequence");
        report = lc_json(bits);
        break;
      }
      case Subcommand::analyze: {
        if (cfg.L > FieldContext::kMaxTableDegree)
          throw UsageError("--length: spectral analysis supports L <= " + std::to_string(FieldContext::kMaxTableDegree));
        const FieldContext ctx = detail::resolve_field(cfg);
        if (!cfg.filter_anf) throw UsageError("--filter: required");
        FilterFunction f;
        try {
          f = parse_anf(*cfg.filter_anf, cfg.L);
        } catch (const std::invalid_argument& e) {
          throw UsageError(std::string("--filter: ") + e.what());
        }
        std::uint64_t seed_state = LfsrGenerator::kCanonicalSeed;
        if (cfg.seed_state) {
          try {
            const Gf2Bits b = Gf2Bits::from_hex(*cfg.seed_state);
            if (b.is_zero() || b.degree() >= cfg.L) throw std::invalid_argument("must be nonzero and fit in L bits");
            seed_state = b.to_u64();
          } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--state: ") + e.what());
          }
        }
        report = analyze_json(ctx, f, seed_state);
        break;
      }
      case Subcommand::prob: {
        if (cfg.L < 2 || cfg.L >= Gf2Bits::kCapacity) throw UsageError("--length: L out of range");
        detail::require_order_flag(cfg, "--order");
        LikelihoodReport r;
        try {
          r = pr_report(cfg.L, cfg.k, {.include_asymptotic = cfg.asymptotic, .require_exact = cfg.exact});
        } catch (const std::length_error& e) {
          throw UsageError(std::string("--exact: ") + e.what());
        }
        report = report_json(r);
        if (cfg.assert_min) {
          const bool holds = r.pr_float > Real(*cfg.assert_min);
          std::ostringstream claim;
          claim << "pr_float > " << *cfg.assert_min;
          report["assertion"] = {{"claim", claim.str()}, {"holds", holds}};
          if (!holds) status = kExitComparison;
        }
        break;
      }
      case Subcommand::enumerate:
      case Subcommand::sample: {
        const bool exhaustive = cfg.subcommand == Subcommand::enumerate;
        detail::require_order_flag(cfg, "--order");
        if (cfg.L > kMaxMonteCarloDegree)
          throw UsageError("--length: experiments support L <= " + std::to_string(kMaxMonteCarloDegree));
        if (!exhaustive && cfg.trials == 0) throw UsageError("--trials: must be at least 1");
        if (cfg.jobs == 0) throw UsageError("--jobs: must be at least 1");
        const FieldContext ctx = detail::resolve_field(cfg);
        ExperimentOptions opts;
        opts.jobs = cfg.jobs;
        opts.keep_records = cfg.csv_path.has_value();
        ExperimentSummary s;
        try {
          s = exhaustive ? run_exhaustive(cfg.L, cfg.k, ctx, opts)
                         : run_monte_carlo(cfg.L, cfg.k, cfg.trials, cfg.seed, ctx, opts);
        } catch (const std::length_error& e) {
          throw UsageError(std::string("--order: ") + e.what());
        }
        const Verdict v = compare(s, pr_report(cfg.L, cfg.k));
        report = summary_json(s, v);
        if (cfg.csv_path) write_trial_csv(s, *cfg.csv_path);
        if (!v.passed()) status = kExitComparison;
        break;
      }
    }
    if (cfg.out_path) {
      std::ofstream f(*cfg.out_path);
      if (!f) throw UsageError("--out: cannot write " + *cfg.out_path);
      write_report(report, cfg.subcommand, cfg.output, f);
    } else {
      write_report(report, cfg.subcommand, cfg.output, out);
    }
    return status;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace filtropt::cli
