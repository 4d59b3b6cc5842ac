#ifndef PLR_CHROMATIC_HPP
#define PLR_CHROMATIC_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "plr/canon.hpp"
#include "plr/poly.hpp"
#include "plr/types.hpp"

#ifndef PLR_CHROMATIC_CACHE_CAP
#define PLR_CHROMATIC_CACHE_CAP 200000
#endif

namespace plr {

/// 0/1 matrix stored as row bitmasks (bit j = column j).
struct BinaryMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint32_t> row_masks;

  /// Rows separated by '/', e.g. "111/100".
  static BinaryMatrix parse(const std::string& text) {
    BinaryMatrix m;
    std::uint32_t cur = 0;
    int width = 0;
    auto finish = [&] {
      if (m.rows == 0) m.cols = width;
      if (width != m.cols) throw ShapeError("ragged matrix text");
      m.row_masks.push_back(cur);
      ++m.rows;
      cur = 0;
      width = 0;
    };
    for (char c : text) {
      if (c == '/') {
        finish();
      } else if (c == '0' || c == '1') {
        if (c == '1') cur |= 1U << width;
        ++width;
      } else if (c != ' ') {
        throw ShapeError("unexpected character in matrix text");
      }
    }
    finish();
    return m;
  }

  bool at(int i, int j) const { return (row_masks[i] >> j) & 1U; }

  int ones() const {
    int k = 0;
    for (auto m : row_masks) k += std::popcount(m);
    return k;
  }

  BinaryMatrix transposed() const {
    BinaryMatrix t{cols, rows, std::vector<std::uint32_t>(static_cast<std::size_t>(cols), 0)};
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (at(i, j)) t.row_masks[j] |= 1U << i;
    return t;
  }

  std::string to_string() const {
    std::string s;
    for (int i = 0; i < rows; ++i) {
      if (i) s += '/';
      for (int j = 0; j < cols; ++j) s += at(i, j) ? '1' : '0';
    }
    return s;
  }

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;
};

/// Bipartite graph with row vertices (colour 1) then column vertices (colour 2).
inline ColoredGraph bipartite_graph(const BinaryMatrix& m) {
  std::vector<int> colors(static_cast<std::size_t>(m.rows + m.cols), 2);
  std::fill(colors.begin(), colors.begin() + m.rows, 1);
  ColoredGraph g(m.rows + m.cols, std::move(colors));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m.at(i, j)) g.add_edge(i, m.rows + j);
  return g;
}

/// Subgraph of the rook's graph induced by the 1-cells (row-major vertex order).
inline ColoredGraph rook_graph(const BinaryMatrix& m) {
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m.at(i, j)) cells.emplace_back(i, j);
  ColoredGraph g(static_cast<int>(cells.size()));
  for (std::size_t a = 0; a < cells.size(); ++a)
    for (std::size_t b = a + 1; b < cells.size(); ++b)
      if (cells[a].first == cells[b].first || cells[a].second == cells[b].second)
        g.add_edge(static_cast<int>(a), static_cast<int>(b));
  return g;
}

/// Matrix canonical under row and column permutations (rows and columns never swapped).
inline BinaryMatrix canonical_matrix(const BinaryMatrix& m, std::vector<std::uint64_t>* code = nullptr) {
  auto form = canonical_form(bipartite_graph(m));
  BinaryMatrix out{m.rows, m.cols, std::vector<std::uint32_t>(static_cast<std::size_t>(m.rows), 0)};
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m.at(i, j)) out.row_masks[form.relabeling(i)] |= 1U << (form.relabeling(m.rows + j) - m.rows);
  if (code) *code = std::move(form.code);
  return out;
}

namespace detail {

class ChromaticCache {
 public:
  UniPoly compute(const ColoredGraph& g) {
    int v = g.vertex_count();
    int e = g.edge_count();
    if (e == 0) return power(v);
    if (e == v * (v - 1) / 2) return UniPoly::falling(v);
    if (connected_components(g) > 1) {
      UniPoly p = UniPoly::constant(1);
      for (const auto& part : split_components(g)) p *= compute(part);
      return p;
    }
    auto key = canonical_form(g).code;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    UniPoly p;
    if (2 * e >= v * (v - 1) / 2) {
      // Dense: P(G) = P(G + uv) + P(G / uv) for a non-edge uv.
      auto [u, w] = pick_pair(g, false);
      ColoredGraph plus = g;
      plus.add_edge(u, w);
      p = compute(plus) + compute(contract(g, u, w));
    } else {
      auto [u, w] = pick_pair(g, true);
      ColoredGraph minus = g;
      minus.remove_edge(u, w);
      p = compute(minus) - compute(contract(g, u, w));
    }
    if (memo_.size() >= PLR_CHROMATIC_CACHE_CAP) memo_.clear();
    memo_.emplace(std::move(key), p);
    return p;
  }

 private:
  static UniPoly power(int v) {
    std::vector<BigInt> c(static_cast<std::size_t>(v + 1), 0);
    c[v] = 1;
    return UniPoly(std::move(c));
  }

  // An edge (or non-edge) touching a vertex of maximum degree.
  static std::pair<int, int> pick_pair(const ColoredGraph& g, bool edge) {
    int v = g.vertex_count(), best = 0;
    for (int a = 1; a < v; ++a)
      if (std::popcount(g.neighbors(a)) > std::popcount(g.neighbors(best))) best = a;
    for (int a = 0; a < v; ++a)
      if (a != best && g.has_edge(best, a) == edge) return {best, a};
    for (int a = 0; a < v; ++a)
      for (int b = a + 1; b < v; ++b)
        if (g.has_edge(a, b) == edge) return {a, b};
    throw InvariantError("no pair to branch on");
  }

  static ColoredGraph contract(const ColoredGraph& g, int u, int w) {
    int v = g.vertex_count();
    std::vector<int> map(static_cast<std::size_t>(v));
    for (int a = 0, k = 0; a < v; ++a) map[a] = a == w ? -1 : k++;
    map[w] = map[u];
    ColoredGraph h(v - 1);
    for (auto [a, b] : g.edges()) {
      int x = map[a], y = map[b];
      if (x != y && !h.has_edge(x, y)) h.add_edge(x, y);
    }
    return h;
  }

  static std::vector<ColoredGraph> split_components(const ColoredGraph& g) {
    int v = g.vertex_count();
    std::vector<int> comp(static_cast<std::size_t>(v), -1);
    std::vector<std::vector<int>> members;
    for (int a = 0; a < v; ++a) {
      if (comp[a] != -1) continue;
      int id = static_cast<int>(members.size());
      members.emplace_back();
      std::vector<int> stack{a};
      comp[a] = id;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        members[id].push_back(x);
        for (std::uint64_t m = g.neighbors(x); m; m &= m - 1) {
          int y = std::countr_zero(m);
          if (comp[y] == -1) {
            comp[y] = id;
            stack.push_back(y);
          }
        }
      }
    }
    std::vector<ColoredGraph> out;
    for (auto& mem : members) {
      std::sort(mem.begin(), mem.end());
      std::vector<int> idx(static_cast<std::size_t>(v), -1);
      for (std::size_t k = 0; k < mem.size(); ++k) idx[mem[k]] = static_cast<int>(k);
      ColoredGraph h(static_cast<int>(mem.size()));
      for (auto [a, b] : g.edges())
        if (idx[a] >= 0 && idx[b] >= 0) h.add_edge(idx[a], idx[b]);
      out.push_back(std::move(h));
    }
    return out;
  }

  std::unordered_map<std::vector<std::uint64_t>, UniPoly, CodeHash> memo_;
};

inline ChromaticCache& chromatic_cache() {
  thread_local ChromaticCache cache;
  return cache;
}

}  // namespace detail

/// Chromatic polynomial by deletion-contraction (addition-contraction when
/// dense), memoised on canonical forms. Vertex colours are ignored.
inline UniPoly chromatic_polynomial(const ColoredGraph& g) {
  ColoredGraph plain(g.vertex_count());
  for (auto [a, b] : g.edges()) plain.add_edge(a, b);
  return detail::chromatic_cache().compute(plain);
}

inline UniPoly rook_chromatic(const BinaryMatrix& m) {
  if (m.ones() == 0) throw ShapeError("rook_chromatic needs a non-empty matrix");
  return chromatic_polynomial(rook_graph(m));
}

struct Block {
  BinaryMatrix matrix;  // canonical, rows <= cols
  int ones = 0;
  BigCount aut_size = 1;
  UniPoly chromatic;
  /// Square and row/column-equivalent to its own transpose.
  bool transpose_equivalent = false;
};

namespace detail {

/// Drops empty rows and columns.
inline BinaryMatrix trim(const BinaryMatrix& m) {
  std::uint32_t used_cols = 0;
  for (auto r : m.row_masks) used_cols |= r;
  BinaryMatrix out{0, std::popcount(used_cols), {}};
  for (auto r : m.row_masks) {
    if (!r) continue;
    std::uint32_t packed = 0;
    int k = 0;
    for (int j = 0; j < m.cols; ++j)
      if ((used_cols >> j) & 1U) packed |= ((r >> j) & 1U) << k++;
    out.row_masks.push_back(packed);
    ++out.rows;
  }
  return out;
}

}  // namespace detail

/// Every block with 1..max_ones ones up to row and column permutations, with
/// rows <= cols. A non-zero `box` restricts blocks to at most box rows and box
/// columns. Sorted by (ones, rows, cols, matrix text).
inline std::vector<Block> generate_blocks(int max_ones, int box = 0) {
  if (max_ones < 1) throw ShapeError("max_ones must be positive");
  if (max_ones > 31 || box > 31) throw SizeLimitError("blocks limited to 31 rows and columns");
  int limit = box > 0 ? box : max_ones;
  std::vector<BinaryMatrix> level{BinaryMatrix::parse("1")};
  std::vector<BinaryMatrix> all = level;
  for (int k = 2; k <= max_ones; ++k) {
    std::unordered_set<std::vector<std::uint64_t>, CodeHash> seen;
    std::vector<BinaryMatrix> next;
    auto offer = [&](BinaryMatrix m) {
      if (m.rows > limit || m.cols > limit) return;
      std::vector<std::uint64_t> code;
      auto c = canonical_matrix(m, &code);
      if (seen.insert(std::move(code)).second) next.push_back(std::move(c));
    };
    for (const auto& b : level) {
      for (int i = 0; i <= b.rows; ++i)
        for (int j = 0; j <= b.cols; ++j) {
          if (i == b.rows && j == b.cols) continue;
          if (i < b.rows && j < b.cols && b.at(i, j)) continue;
          if (i < b.rows && j < b.cols) {
            BinaryMatrix m = b;
            m.row_masks[i] |= 1U << j;
            offer(std::move(m));
          } else if (i == b.rows) {
            if (b.row_masks.empty()) continue;
            BinaryMatrix m = b;
            ++m.rows;
            m.row_masks.push_back(1U << j);
            offer(std::move(m));
          } else {
            BinaryMatrix m = b;
            ++m.cols;
            m.row_masks[i] |= 1U << b.cols;
            offer(std::move(m));
          }
        }
    }
    level = std::move(next);
    all.insert(all.end(), level.begin(), level.end());
  }
  std::vector<Block> out;
  for (const auto& m : all) {
    if (m.rows > m.cols) continue;
    Block b;
    b.matrix = m;
    b.ones = m.ones();
    b.aut_size = automorphism_count(bipartite_graph(m));
    b.chromatic = rook_chromatic(m);
    if (m.rows == m.cols) {
      std::vector<std::uint64_t> c1, c2;
      canonical_matrix(m, &c1);
      canonical_matrix(m.transposed(), &c2);
      b.transpose_equivalent = c1 == c2;
    }
    out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end(), [](const Block& a, const Block& b) {
    auto ka = std::tuple(a.ones, a.matrix.rows, a.matrix.cols);
    auto kb = std::tuple(b.ones, b.matrix.rows, b.matrix.cols);
    if (ka != kb) return ka < kb;
    return a.matrix.to_string() > b.matrix.to_string();
  });
  return out;
}

/// A block placed in its stored orientation (t = 0) or transposed (t = 1).
struct OrientedBlock {
  const Block* block = nullptr;
  bool transposed = false;
  int rows() const { return transposed ? block->matrix.cols : block->matrix.rows; }
  int cols() const { return transposed ? block->matrix.rows : block->matrix.cols; }
};

/// Square blocks are never transposed; every other block appears in both orientations.
inline std::vector<OrientedBlock> oriented_blocks(const std::vector<Block>& blocks) {
  std::vector<OrientedBlock> out;
  for (const auto& b : blocks) {
    out.push_back({&b, false});
    if (b.matrix.rows != b.matrix.cols) out.push_back({&b, true});
  }
  return out;
}

/// Visits every multiset of oriented blocks with `m` ones in total, at most
/// max_rows rows and max_cols columns (0 = unbounded). The visitor receives
/// (e_row, e_col, stabiliser order prod|Aut| prod k_i!, product of chromatic polynomials).
template <class Visit>
void for_each_block_multiset(const std::vector<OrientedBlock>& items, int m, int max_rows, int max_cols,
                             Visit&& visit) {
  int R = max_rows > 0 ? max_rows : m;
  int C = max_cols > 0 ? max_cols : m;
  auto rec = [&](auto&& self, std::size_t i, int left, int rows, int cols, const BigCount& stab,
                 const UniPoly& prod) -> void {
    if (left == 0) {
      visit(rows, cols, stab, prod);
      return;
    }
    for (; i < items.size(); ++i) {
      const OrientedBlock& it = items[i];
      if (it.block->ones > left) break;
      BigCount s = stab;
      UniPoly p = prod;
      int k = 0, l = left, r = rows, c = cols;
      while (l >= it.block->ones && r + it.rows() <= R && c + it.cols() <= C) {
        ++k;
        l -= it.block->ones;
        r += it.rows();
        c += it.cols();
        s *= it.block->aut_size * k;
        p *= it.block->chromatic;
        self(self, i + 1, l, r, c, s, p);
      }
    }
  };
  rec(rec, 0, m, 0, 0, BigCount(1), UniPoly::constant(1));
}

/// #PLR(r,s,n;m) assembled from blocks: sum over block multisets of
/// [r]_{e_row} [s]_{e_col} prod Pi(K;n) / (prod |Aut(G_K)| prod k_i!).
inline BigCount count_via_blocks(const Shape& shape, int m, const std::vector<Block>* blocks = nullptr) {
  if (m < 0) throw ShapeError("negative weight");
  if (m == 0) return 1;
  if (m > shape.cells()) return 0;
  std::vector<Block> local;
  if (!blocks) {
    local = generate_blocks(m, std::min(m, std::max(shape.r, shape.s)));
    blocks = &local;
  }
  auto items = oriented_blocks(*blocks);
  std::stable_sort(items.begin(), items.end(),
                   [](const OrientedBlock& a, const OrientedBlock& b) { return a.block->ones < b.block->ones; });
  BigRational total = 0;
  BigInt n = shape.n;
  for_each_block_multiset(items, m, shape.r, shape.s,
                          [&](int er, int ec, const BigCount& stab, const UniPoly& prod) {
                            BigCount num = falling_factorial(shape.r, er) * falling_factorial(shape.s, ec) * prod.eval(n);
                            total += BigRational(num, stab);
                          });
  if (denominator(total) != 1) throw InvariantError("block assembly is not an integer");
  return numerator(total);
}

/// f_m(r,s,n) = m! #PLR(r,s,n;m) as an exact polynomial, assembled symbolically from blocks.
inline TriPoly f_m_polynomial(int m, const std::vector<Block>* blocks = nullptr) {
  if (m < 0) throw ShapeError("negative weight");
  if (m == 0) return TriPoly::constant(1);
  std::vector<Block> local;
  if (!blocks) {
    local = generate_blocks(m);
    blocks = &local;
  }
  auto items = oriented_blocks(*blocks);
  std::stable_sort(items.begin(), items.end(),
                   [](const OrientedBlock& a, const OrientedBlock& b) { return a.block->ones < b.block->ones; });
  BigCount mf = factorial(m);
  std::map<std::pair<int, int>, UniPoly> by_extent;
  for_each_block_multiset(items, m, 0, 0, [&](int er, int ec, const BigCount& stab, const UniPoly& prod) {
    by_extent[{er, ec}] += prod * UniPoly::constant(exact_div(mf, stab, "f_m coefficient"));
  });
  TriPoly f;
  for (const auto& [e, u] : by_extent)
    f += TriPoly::from_uni(UniPoly::falling(e.first), 0) * TriPoly::from_uni(UniPoly::falling(e.second), 1) *
         TriPoly::from_uni(u, 2);
  return f;
}

inline constexpr int kBlockTableVersion = 1;

/// Line-oriented block table: a header "plr-blocks <version> <max_ones> <box>",
/// then per block "rows cols mask,mask,... aut transpose_equivalent c0 c1 ...".
inline void save_blocks(const std::filesystem::path& file, const std::vector<Block>& blocks, int max_ones,
                        int box = 0) {
  std::ofstream os(file, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + file.string());
  os << "plr-blocks " << kBlockTableVersion << ' ' << max_ones << ' ' << box << '\n';
  for (const auto& b : blocks) {
    os << b.matrix.rows << ' ' << b.matrix.cols << ' ';
    for (int i = 0; i < b.matrix.rows; ++i) os << (i ? "," : "") << b.matrix.row_masks[i];
    os << ' ' << b.aut_size << ' ' << (b.transpose_equivalent ? 1 : 0);
    for (const auto& c : b.chromatic.coefficients()) os << ' ' << c;
    os << '\n';
  }
}

/// Returns false when the file is absent or was written for a different version or size.
inline bool load_blocks(const std::filesystem::path& file, int max_ones, int box, std::vector<Block>& out) {
  std::ifstream is(file);
  if (!is) return false;
  std::string tag;
  int version = 0, ones = 0, b = 0;
  if (!(is >> tag >> version >> ones >> b) || tag != "plr-blocks" || version != kBlockTableVersion ||
      ones != max_ones || b != box)
    return false;
  out.clear();
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    Block blk;
    std::string masks, aut;
    int teq = 0;
    ls >> blk.matrix.rows >> blk.matrix.cols >> masks >> aut >> teq;
    std::istringstream ms(masks);
    for (std::string part; std::getline(ms, part, ',');) blk.matrix.row_masks.push_back(static_cast<std::uint32_t>(std::stoul(part)));
    blk.aut_size = BigCount(aut);
    blk.transpose_equivalent = teq != 0;
    std::vector<BigInt> coeffs;
    for (std::string c; ls >> c;) coeffs.emplace_back(c);
    blk.chromatic = UniPoly(std::move(coeffs));
    blk.ones = blk.matrix.ones();
    if (static_cast<int>(blk.matrix.row_masks.size()) != blk.matrix.rows) return false;
    out.push_back(std::move(blk));
  }
  return true;
}

/// generate_blocks through an on-disk table, regenerated when absent or stale.
inline std::vector<Block> cached_blocks(int max_ones, const std::filesystem::path& file, int box = 0) {
  std::vector<Block> blocks;
  if (!file.empty() && load_blocks(file, max_ones, box, blocks)) return blocks;
  blocks = generate_blocks(max_ones, box);
  if (!file.empty()) save_blocks(file, blocks, max_ones, box);
  return blocks;
}

}  // namespace plr

#endif  // PLR_CHROMATIC_HPP
