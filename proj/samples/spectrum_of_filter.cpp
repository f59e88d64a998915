// Coset spectrum of a single filter: which cosets contribute to the linear complexity.
//
//   sample_spectrum_of_filter [L] "<anf>"

#include <cstdlib>
#include <iostream>
#include <string>

#include "filtropt/filtropt.hpp"

int main(int argc, char** argv) {
  const int L = argc > 1 ? std::atoi(argv[1]) : 7;
  const std::string anf = argc > 2 ? argv[2] : "x0*x3*x5 + x1*x2 + x4";
  const auto ctx = filtropt::field_for_degree(L);
  const auto f = filtropt::parse_anf(anf, L);
  const filtropt::LfsrGenerator gen(ctx);
  const auto z = filtropt::filter_sequence(f, gen, gen.period());
  const auto s = filtropt::dft(z, ctx);
  for (const auto& [leader, line] : s.lines)
    std::cout << "leader " << leader << "  weight " << line.coset.weight << "  r " << line.coset.cardinal
              << "  C = " << line.coefficient.to_hex() << '\n';
  std::cout << "lc " << filtropt::lc_from_spectrum(s) << " of max " << filtropt::nk(L, f.order()).str()
            << ", period " << *filtropt::period_from_spectrum(s) << '\n';
}
