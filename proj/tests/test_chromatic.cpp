#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "plr/chromatic.hpp"
#include "plr/oracle.hpp"
#include "support.hpp"

using namespace plr;

namespace {

/// Proper colourings of the rook graph of `m` with n colours, counted directly.
BigCount brute_colourings(const BinaryMatrix& m, int n) {
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m.at(i, j)) cells.emplace_back(i, j);
  std::vector<int> col(cells.size(), 0);
  BigCount count = 0;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == cells.size()) {
      ++count;
      return;
    }
    for (int c = 0; c < n; ++c) {
      bool ok = true;
      for (std::size_t t = 0; t < k && ok; ++t)
        if (col[t] == c && (cells[t].first == cells[k].first || cells[t].second == cells[k].second)) ok = false;
      if (ok) {
        col[k] = c;
        self(self, k + 1);
      }
    }
  };
  rec(rec, 0);
  return count;
}

BinaryMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  BinaryMatrix m{rows, cols, std::vector<std::uint32_t>(static_cast<std::size_t>(rows), 0)};
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (rng() % 2) m.row_masks[i] |= 1U << j;
  return m;
}

bool same_block(const BinaryMatrix& a, const BinaryMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  std::vector<std::uint64_t> ca, cb;
  canonical_matrix(a, &ca);
  canonical_matrix(b, &cb);
  return ca == cb;
}

}  // namespace

TEST(Chromatic, RookChromaticExamples) {
  auto n = UniPoly::variable();
  EXPECT_EQ(rook_chromatic(BinaryMatrix::parse("1")), n);
  EXPECT_EQ(rook_chromatic(BinaryMatrix::parse("11")), n * UniPoly::linear(1));
  EXPECT_EQ(rook_chromatic(BinaryMatrix::parse("11/11")), plr::testing::parse_factored("n(n-1)(n^2-3n+3)"));
  EXPECT_EQ(rook_chromatic(BinaryMatrix::parse("11/11")).eval(2), 2);
}

TEST(Chromatic, MatchesBruteForceColourings) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 60; ++t) {
    auto m = random_matrix(rng, 1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3));
    if (m.ones() == 0) continue;
    auto p = rook_chromatic(m);
    for (int n = 0; n <= 4; ++n) ASSERT_EQ(p.eval(n), brute_colourings(m, n)) << m.to_string();
  }
}

TEST(Chromatic, ProductOverComponents) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 30; ++t) {
    auto a = random_matrix(rng, 2, 2), b = random_matrix(rng, 2, 3);
    if (!a.ones() || !b.ones()) continue;
    BinaryMatrix d{4, 5, {a.row_masks[0], a.row_masks[1], b.row_masks[0] << 2, b.row_masks[1] << 2}};
    EXPECT_EQ(rook_chromatic(d), rook_chromatic(a) * rook_chromatic(b));
  }
}

TEST(Chromatic, BlocksMatchTable) {
  auto blocks = generate_blocks(5);
  auto rows = plr::testing::read_csv("blocks_table.csv");
  ASSERT_EQ(blocks.size(), 16U);
  ASSERT_EQ(rows.size(), 16U);
  std::vector<char> hit(blocks.size(), 0);
  for (const auto& row : rows) {
    auto m = BinaryMatrix::parse(row[0]);
    int found = -1;
    for (std::size_t k = 0; k < blocks.size(); ++k)
      if (same_block(blocks[k].matrix, m)) found = static_cast<int>(k);
    ASSERT_GE(found, 0) << row[0];
    hit[found] = 1;
    EXPECT_EQ(blocks[found].aut_size, BigCount(row[1])) << row[0];
    EXPECT_EQ(blocks[found].chromatic, plr::testing::parse_factored(row[2])) << row[0];
  }
  for (char h : hit) EXPECT_TRUE(h);
}

TEST(Chromatic, BlocksAreConnectedAndDistinct) {
  auto blocks = generate_blocks(6);
  for (std::size_t a = 0; a < blocks.size(); ++a) {
    const auto& m = blocks[a].matrix;
    EXPECT_LE(m.rows, m.cols);
    EXPECT_EQ(connected_components(rook_graph(m)), 1);
    EXPECT_EQ(detail::trim(m), m);
    for (std::size_t b = a + 1; b < blocks.size(); ++b) EXPECT_FALSE(same_block(m, blocks[b].matrix));
    BigCount bound = factorial(m.rows) * factorial(m.cols);
    EXPECT_EQ(bound % blocks[a].aut_size, 0);
    EXPECT_EQ(blocks[a].chromatic.degree(), blocks[a].ones);
  }
}

TEST(Chromatic, AutomorphismsMatchMatrixStabiliser) {
  // |{(a,b) in S_3 x S_3 : a M b^T = M}| for every 3x3 matrix without empty lines.
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  for (unsigned bits = 1; bits < 512; ++bits) {
    BinaryMatrix m{3, 3, {bits & 7U, (bits >> 3) & 7U, (bits >> 6) & 7U}};
    if (detail::trim(m) != m) continue;
    int stab = 0;
    for (const auto& a : perms)
      for (const auto& b : perms) {
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i)
          for (int j = 0; j < 3 && ok; ++j) ok = m.at(a[i], b[j]) == m.at(i, j);
        stab += ok;
      }
    EXPECT_EQ(automorphism_count(bipartite_graph(m)), stab) << m.to_string();
  }
}

TEST(Chromatic, AssemblyMatchesDirectCounts) {
  for (int r = 1; r <= 4; ++r)
    for (int s = 1; s <= 4; ++s)
      for (int n = 1; n <= 4; ++n) {
        Shape sh(r, s, n);
        if (r * s > 12) continue;
        auto direct = count_all(sh);
        auto blocks = generate_blocks(r * s, std::max(r, s));
        for (int m = 0; m <= r * s; ++m) ASSERT_EQ(count_via_blocks(sh, m, &blocks), direct[m]) << sh << " m=" << m;
      }
}

TEST(Chromatic, AssemblyExamples) {
  EXPECT_EQ(count_via_blocks(Shape(2, 2, 7), 2), 266);
  EXPECT_EQ(count_via_blocks(Shape(3, 3, 7), 7), 5560380);
  EXPECT_EQ(count_via_blocks(Shape(3, 3, 7), 9), 2212980);
}

TEST(Chromatic, AssemblyMatchesPublishedCounts) {
  auto table = plr::testing::read_count_table("plr_counts.csv");
  for (const auto& [key, t] : table) {
    Shape sh(key[0], key[1], key[2]);
    for (std::size_t m = 0; m < t.counts.size() && m <= 6; ++m)
      if (t.counts[m] != 0) EXPECT_EQ(count_via_blocks(sh, static_cast<int>(m)), t.counts[m]) << sh << " m=" << m;
  }
}

TEST(Chromatic, FmPolynomialStructure) {
  auto blocks = generate_blocks(5);
  for (int m = 1; m <= 5; ++m) {
    auto f = f_m_polynomial(m, &blocks);
    EXPECT_TRUE(f.is_symmetric()) << m;
    EXPECT_EQ(f.degree(), 3 * m);
    EXPECT_EQ(f.coefficient({m, m, m}), 1);
    EXPECT_TRUE(f.divisible_by_rsn());
    for (int r = 1; r <= 3; ++r)
      for (int s = 1; s <= 3; ++s)
        for (int n = 1; n <= 3; ++n) {
          Shape sh(r, s, n);
          BigCount direct = m <= sh.cells() ? count_all(sh)[m] : BigCount(0);
          ASSERT_EQ(f.eval(r, s, n), factorial(m) * direct) << sh << " m=" << m;
        }
  }
  EXPECT_EQ(f_m_polynomial(2, &blocks).eval(2, 2, 2), 32);
  EXPECT_EQ(f_m_polynomial(1), TriPoly::rsn_power(1));
}

TEST(Chromatic, BlockCacheRoundTrip) {
  auto dir = std::filesystem::temp_directory_path() / "plr_block_cache_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  auto file = dir / "blocks.txt";
  auto fresh = cached_blocks(5, file);
  ASSERT_TRUE(std::filesystem::exists(file));
  std::vector<Block> loaded;
  ASSERT_TRUE(load_blocks(file, 5, 0, loaded));
  ASSERT_EQ(loaded.size(), fresh.size());
  for (std::size_t k = 0; k < loaded.size(); ++k) {
    EXPECT_EQ(loaded[k].matrix, fresh[k].matrix);
    EXPECT_EQ(loaded[k].aut_size, fresh[k].aut_size);
    EXPECT_EQ(loaded[k].chromatic, fresh[k].chromatic);
  }
  std::vector<Block> other;
  EXPECT_FALSE(load_blocks(file, 4, 0, other));
  std::filesystem::remove_all(dir);
}
