#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "filtropt/poly_table.hpp"

using namespace filtropt;

TEST(PolyTable, EveryEmbeddedEntryIsPrimitive) {
  const auto table = embedded_poly_table();
  ASSERT_FALSE(table.empty());
  for (const auto& e : table) {
    EXPECT_EQ(e.modulus.degree(), e.degree);
    EXPECT_TRUE(is_primitive(e.degree, e.modulus, e.factors)) << "L=" << e.degree;
  }
}

TEST(PolyTable, CoversSmallAndHeadlineDegrees) {
  const auto table = embedded_poly_table();
  for (int L = 2; L <= 32; ++L) EXPECT_TRUE(find_entry(table, L).has_value()) << L;
  for (int L : {61, 89, 107, 127, 257}) EXPECT_TRUE(find_entry(table, L).has_value()) << L;
  EXPECT_EQ(find_entry(table, 3)->modulus, Gf2Bits::from_u64(0xb));
  EXPECT_EQ(find_entry(table, 4)->modulus, Gf2Bits::from_u64(0x13));
}

TEST(PolyTable, ParsesCommentsAndRejectsMalformedLines) {
  std::istringstream good("# header\n3 0xb 7  # trinomial\n\n4 0x13 3,5\n");
  const auto t = parse_poly_table(good);
  ASSERT_EQ(t.size(), 2U);
  EXPECT_EQ(t[1].factors, (std::vector<BigInt>{3, 5}));
  std::istringstream bad("3 0xb\n");
  EXPECT_THROW(parse_poly_table(bad), std::runtime_error);
  std::istringstream bad_factor("3 0xb 7a\n");
  EXPECT_THROW(parse_poly_table(bad_factor), std::runtime_error);
  EXPECT_THROW(parse_factor_list("3,,5"), std::invalid_argument);
}

TEST(PolyTable, EnvironmentOverride) {
  const auto path = std::filesystem::temp_directory_path() / "filtropt_table_override.txt";
  {
    std::ofstream out(path);
    out << "5 0x29 31\n";  // x^5 + x^3 + 1
  }
  ::setenv("FILTROPT_POLY_TABLE", path.c_str(), 1);
  const auto ctx = field_for_degree(5);
  EXPECT_EQ(ctx.modulus(), Gf2Bits::from_u64(0x29));
  EXPECT_THROW(field_for_degree(4), std::out_of_range);
  ::setenv("FILTROPT_POLY_TABLE", (path.string() + ".missing").c_str(), 1);
  EXPECT_THROW(load_poly_table(), std::runtime_error);
  ::unsetenv("FILTROPT_POLY_TABLE");
  EXPECT_EQ(field_for_degree(5).modulus(), Gf2Bits::from_u64(0x25));
  std::filesystem::remove(path);
}
