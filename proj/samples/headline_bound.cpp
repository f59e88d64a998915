// Probability of maximum linear complexity for a 257-stage LFSR with k = 128.

#include <iostream>

#include "filtropt/likelihood.hpp"

int main() {
  const auto r = filtropt::pr_report(257, 128);
  std::cout << "N_k               " << r.nk_value.str() << '\n'
            << "Pr                " << filtropt::format_real(r.pr_float, 30) << '\n'
            << "(1-2^-L)^(N_k/L)  " << filtropt::format_real(r.bound_product, 30) << '\n'
            << "exp(-N_k/(2^L L)) " << filtropt::format_real(r.bound_general, 30) << '\n'
            << "exp(-1/(2L))      " << filtropt::format_real(*r.bound_asymptotic, 30) << '\n'
            << "log10(ln Pr - ln bound_general) magnitude "
            << filtropt::format_real(r.margin_pr_over_general.log10_abs(), 12)
            << (r.exceeds_bound_general() ? " (Pr above)" : " (Pr below)") << '\n';
}
