#pragma once

// Table of verified primitive polynomials with the factorization of 2^L - 1.
//
// Record format, one per line ('#' starts a comment):
//   <L> <hex modulus> <p1,p2,...>
// Factors are decimal primes listed with multiplicity.
// FILTROPT_POLY_TABLE names a file that replaces the embedded table.

#include <cstdlib>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "filtropt/field.hpp"
#include "filtropt/poly_table_data.hpp"

namespace filtropt {

struct PolyTableEntry {
  int degree = 0;
  Gf2Bits modulus;
  std::vector<BigInt> factors;
};

inline std::vector<BigInt> parse_factor_list(const std::string& text) {
  std::vector<BigInt> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty factor in list '" + text + "'");
    item = item.substr(b, e - b + 1);
    if (item.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("factor '" + item + "' is not a decimal integer");
    out.emplace_back(item);
  }
  if (out.empty()) throw std::invalid_argument("empty factor list");
  return out;
}

inline std::vector<PolyTableEntry> parse_poly_table(std::istream& in) {
  std::vector<PolyTableEntry> table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    PolyTableEntry entry;
    std::string hex, factors;
    if (!(ls >> entry.degree)) continue;
    if (!(ls >> hex >> factors))
      throw std::runtime_error("polynomial table line " + std::to_string(lineno) + ": expected '<L> <hex> <factors>'");
    try {
      entry.modulus = Gf2Bits::from_hex(hex);
      entry.factors = parse_factor_list(factors);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("polynomial table line " + std::to_string(lineno) + ": " + e.what());
    }
    table.push_back(std::move(entry));
  }
  return table;
}

inline std::vector<PolyTableEntry> embedded_poly_table() {
  std::istringstream in{std::string(kEmbeddedPolyTable)};
  return parse_poly_table(in);
}

// Embedded table unless FILTROPT_POLY_TABLE points at a replacement file.
inline std::vector<PolyTableEntry> load_poly_table() {
  if (const char* path = std::getenv("FILTROPT_POLY_TABLE"); path != nullptr && *path != '\0') {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(std::string("cannot open FILTROPT_POLY_TABLE file ") + path);
    return parse_poly_table(in);
  }
  return embedded_poly_table();
}

inline std::optional<PolyTableEntry> find_entry(const std::vector<PolyTableEntry>& table, int L) {
  for (const auto& e : table)
    if (e.degree == L) return e;
  return std::nullopt;
}

// Verified context for the table entry of degree L.
inline FieldContext field_for_degree(int L) {
  auto entry = find_entry(load_poly_table(), L);
  if (!entry) throw std::out_of_range("no primitive polynomial on record for L=" + std::to_string(L));
  return FieldContext(L, entry->modulus, entry->factors);
}

}  // namespace filtropt
