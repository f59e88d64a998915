// Exhaustive census of all order-k filters on a small LFSR, compared with the closed form.
//
//   sample_census [L] [k]

#include <cstdlib>
#include <iostream>

#include "filtropt/filtropt.hpp"

int main(int argc, char** argv) {
  const int L = argc > 1 ? std::atoi(argv[1]) : 5;
  const int k = argc > 2 ? std::atoi(argv[2]) : 2;
  const filtropt::FieldContext ctx = filtropt::field_for_degree(L);
  const auto summary = filtropt::run_exhaustive(L, k, ctx, {.jobs = 4});
  const auto report = filtropt::pr_report(L, k);
  std::cout << "L=" << L << " k=" << k << '\n'
            << "filters            " << summary.trials << '\n'
            << "max lc (" << summary.max_lc_target << ")        " << summary.hits_max_lc << '\n'
            << "max period         " << summary.hits_max_period << '\n'
            << "nfm                " << report.nfm->str() << '\n'
            << "Pr                 " << filtropt::format_real(report.pr_float, 12) << '\n';
  return filtropt::compare(summary, report).passed() ? 0 : 2;
}
