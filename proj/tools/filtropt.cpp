// filtropt: command-line front end. Parsing only; the work happens in cli::dispatch.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "filtropt/cli.hpp"

using filtropt::cli::OutputFormat;
using filtropt::cli::RunConfig;
using filtropt::cli::Subcommand;

namespace {

void add_output_flags(CLI::App* cmd, RunConfig& cfg) {
  const std::map<std::string, OutputFormat> formats{
      {"json", OutputFormat::json}, {"csv", OutputFormat::csv}, {"human", OutputFormat::human}};
  cmd->add_option("--output", cfg.output, "Output format: json, csv or human")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  cmd->add_option("--out", cfg.out_path, "Write the report to this file instead of stdout");
}

void add_field_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--poly", cfg.poly, "Primitive feedback polynomial as hex bitmask (bit i = x^i)");
  cmd->add_option("--factors", cfg.factors, "Prime factors of 2^L-1 with multiplicity: p1,p2,... or @file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlinear filter generators: linear complexity, period and likelihood of optimal filters"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* cosets = app.add_subcommand("cosets", "Cyclotomic cosets mod 2^L-1 up to a binary weight");
  cosets->add_option("--length,-L", cfg.L, "Register length L")->required();
  cosets->add_option("--max-weight,-k", cfg.k, "Largest coset weight")->required();
  add_output_flags(cosets, cfg);

  auto* lc = app.add_subcommand("lc", "Linear complexity of a bit string (Berlekamp-Massey)");
  lc->add_option("--bits", cfg.bits, "0/1 string or @file")->required();
  add_output_flags(lc, cfg);

  auto* analyze = app.add_subcommand("analyze", "Spectrum, complexity and period of one filter");
  analyze->add_option("--length,-L", cfg.L, "Register length L (<= 16)")->required();
  analyze->add_option("--filter", cfg.filter_anf, "Filter in ANF, e.g. \"x0 + x1*x3\"")->required();
  analyze->add_option("--state", cfg.seed_state, "Initial register state as hex (default 0x1)");
  add_field_flags(analyze, cfg);
  add_output_flags(analyze, cfg);

  auto* prob = app.add_subcommand("prob", "Probability of maximum linear complexity and reference bounds");
  prob->add_option("--length,-L", cfg.L, "Register length L")->required();
  prob->add_option("--order,-k", cfg.k, "Filter order k")->required();
  prob->add_flag("--exact", cfg.exact, "Require exact big-integer evaluation");
  prob->add_flag("--asymptotic", cfg.asymptotic, "Report exp(-1/(2L)) for any k");
  prob->add_option("--assert-min", cfg.assert_min, "Assert pr_float exceeds this value (exit 2 otherwise)");
  bool json_flag = false;
  prob->add_flag("--json", json_flag, "Shorthand for --output json");
  add_output_flags(prob, cfg);

  auto* enumerate = app.add_subcommand("enumerate", "Exhaustive census over every order-k filter");
  enumerate->add_option("--length,-L", cfg.L, "Register length L")->required();
  enumerate->add_option("--order,-k", cfg.k, "Filter order k")->required();
  enumerate->add_option("--jobs", cfg.jobs, "Worker threads (output does not depend on this)");
  enumerate->add_option("--csv", cfg.csv_path, "Per-filter CSV: filter_anf,lc,period,is_max");
  add_field_flags(enumerate, cfg);
  add_output_flags(enumerate, cfg);

  auto* sample = app.add_subcommand("sample", "Seeded Monte Carlo estimate over random order-k filters");
  sample->add_option("--length,-L", cfg.L, "Register length L")->required();
  sample->add_option("--order,-k", cfg.k, "Filter order k")->required();
  sample->add_option("--trials", cfg.trials, "Number of random filters");
  sample->add_option("--seed", cfg.seed, "Master seed");
  sample->add_option("--jobs", cfg.jobs, "Worker threads (output does not depend on this)");
  sample->add_option("--csv", cfg.csv_path, "Per-trial CSV: filter_anf,lc,period,is_max");
  add_field_flags(sample, cfg);
  add_output_flags(sample, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : filtropt::cli::kExitValidation;
  }

  if (*cosets) cfg.subcommand = Subcommand::cosets;
  else if (*lc) cfg.subcommand = Subcommand::lc;
  else if (*analyze) cfg.subcommand = Subcommand::analyze;
  else if (*prob) cfg.subcommand = Subcommand::prob;
  else if (*enumerate) cfg.subcommand = Subcommand::enumerate;
  else cfg.subcommand = Subcommand::sample;
  if (json_flag) cfg.output = OutputFormat::json;

  return filtropt::cli::dispatch(cfg, std::cout, std::cerr);
}
